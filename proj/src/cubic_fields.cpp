#include "szeta/cubic_fields.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "szeta/arith.hpp"
#include "szeta/errors.hpp"
#include "szeta/quadratic.hpp"
#include "szeta/reduction.hpp"

namespace szeta {

namespace {

BinaryCubicForm mirror(const BinaryCubicForm& f) { return {f.a, -f.b, f.c, -f.d}; }

// An isomorphism class of cubic fields is a GL2(Z)-orbit of maximal
// irreducible forms; it always splits into two SL2(Z)-orbits swapped by the
// mirror map (a cubic field has no automorphism of order 2, so no class is
// self-mirrored).  The stored representative is the smaller canonical rep.
CubicField field_from_class_pair(const OrbitClass& cls, const BinaryCubicForm& partner) {
    CubicField k;
    k.form = std::min(cls.rep, partner);
    k.disc = cls.disc;
    k.cyclic = is_square(cls.disc);
    if (k.cyclic != (cls.stab_order == 3))
        throw error("cubic field at disc " + std::to_string(cls.disc) +
                    ": stabilizer order " + std::to_string(cls.stab_order) +
                    " contradicts the square-discriminant test");
    return k;
}

// Pair off the maximal irreducible classes of one discriminant.
void append_fields_at_disc(const std::vector<OrbitClass>& classes,
                           std::vector<CubicField>& out) {
    std::map<BinaryCubicForm, const OrbitClass*> by_rep;
    for (const auto& c : classes) by_rep[c.rep] = &c;
    std::set<BinaryCubicForm> used;
    for (const auto& c : classes) {
        if (used.count(c.rep)) continue;
        BinaryCubicForm partner = canonical_form(mirror(c.rep)).rep;
        auto it = by_rep.find(partner);
        if (it == by_rep.end() || partner == c.rep ||
            it->second->stab_order != c.stab_order)
            throw error("unpaired maximal class at disc " + std::to_string(c.disc) +
                        ": " + c.rep.str());
        used.insert(c.rep);
        used.insert(partner);
        out.push_back(field_from_class_pair(c, partner));
    }
}

}  // namespace

const char* splitting_name(SplittingSymbol s) {
    switch (s) {
        case SplittingSymbol::s111: return "111";
        case SplittingSymbol::s12: return "12";
        case SplittingSymbol::s3: return "3";
        case SplittingSymbol::s121: return "1^2 1";
        case SplittingSymbol::s13: return "1^3";
    }
    return "?";
}

std::vector<CubicField> fields_with_disc(Int n, const EnumerateOptions& opts) {
    if (n == 0) return {};
    std::vector<OrbitClass> keep;
    for (const auto& c : enumerate_classes(n, n, opts))
        if (c.irreducible && c.maximal) keep.push_back(c);
    std::vector<CubicField> out;
    append_fields_at_disc(keep, out);
    std::sort(out.begin(), out.end(),
              [](const CubicField& x, const CubicField& y) { return x.form < y.form; });
    return out;
}

std::vector<CubicField> fields_in_range(Int lo, Int hi, const EnumerateOptions& opts) {
    std::map<Int, std::vector<OrbitClass>> by_disc;
    enumerate_classes_stream(
        lo, hi,
        [&](const OrbitClass& c) {
            if (c.irreducible && c.maximal) by_disc[c.disc].push_back(c);
        },
        opts);
    std::vector<CubicField> out;
    for (auto& [disc, classes] : by_disc) {
        std::vector<CubicField> here;
        append_fields_at_disc(classes, here);
        std::sort(here.begin(), here.end(),
                  [](const CubicField& x, const CubicField& y) { return x.form < y.form; });
        out.insert(out.end(), here.begin(), here.end());
    }
    return out;
}

const std::vector<CubicField>& FieldCache::get(Int disc) {
    auto it = by_disc.find(disc);
    if (it != by_disc.end()) return it->second;
    return by_disc.emplace(disc, fields_with_disc(disc, opts)).first->second;
}

SplittingSymbol splitting_type(const CubicField& k, Int p) {
    if (p < 2) throw precondition_violated("splitting_type: p must be prime");
    LocalType t = local_type(k.form, p);
    int v = 0;
    for (Int m = k.disc; m % p == 0; m /= p) ++v;
    if (v == 0) {
        switch (t) {
            case LocalType::split111: return SplittingSymbol::s111;
            case LocalType::split12: return SplittingSymbol::s12;
            case LocalType::split3: return SplittingSymbol::s3;
            default:
                throw error("splitting_type: repeated root at unramified p = " +
                            std::to_string(p));
        }
    }
    if (v == 1) {
        if (t != LocalType::ramified121)
            throw error("splitting_type: p || disc without a double root, p = " +
                        std::to_string(p));
        return SplittingSymbol::s121;
    }
    // p^2 | disc with a p-maximal form: the repeated root's multiplicity
    // distinguishes partial from total ramification
    if (t == LocalType::ramified121) return SplittingSymbol::s121;
    if (t == LocalType::ramified13) return SplittingSymbol::s13;
    throw error("splitting_type: ramified p without repeated root, p = " + std::to_string(p));
}

CubicField find_E(Int d, const EnumerateOptions& opts) {
    if (d <= 0 || !is_fundamental_discriminant(d))
        throw precondition_violated("find_E: d must be a positive fundamental discriminant");
    if (d % 9 != 3)
        throw precondition_violated("find_E: d = 3 mod 9 required, got " + std::to_string(d));
    Int m = -(d / 3);
    if (!is_fundamental_discriminant(m))
        throw precondition_violated("find_E: -d/3 = " + std::to_string(m) +
                                    " is not a fundamental discriminant");
    if (class_number(m) % 3 == 0)
        throw precondition_violated("find_E: 3 divides h(" + std::to_string(m) + ")");
    auto fields = fields_with_disc(-27 * d, opts);
    if (fields.empty())
        throw not_found("find_E: no cubic field of discriminant " + std::to_string(-27 * d));
    if (fields.size() > 1)
        throw error("find_E: " + std::to_string(fields.size()) +
                    " fields of discriminant " + std::to_string(-27 * d) +
                    ", expected a unique one");
    return fields[0];
}

int omega_d(Int d, Int p, const CubicField& e) {
    if (kronecker(-3 * d, p) != 1)
        throw precondition_violated("omega_d: kronecker(-3d, p) = 1 required for d = " +
                                    std::to_string(d) + ", p = " + std::to_string(p));
    return splitting_type(e, p) == SplittingSymbol::s111 ? 2 : -1;
}

namespace {

Int parse_int_field(const std::string& tok, std::size_t line_no) {
    std::size_t i = 0, j = tok.size();
    while (i < j && (tok[i] == ' ' || tok[i] == '\t')) ++i;
    while (j > i && (tok[j - 1] == ' ' || tok[j - 1] == '\t' || tok[j - 1] == '\r')) --j;
    std::string t = tok.substr(i, j - i);
    if (t.empty()) throw parse_error("field table line " + std::to_string(line_no) +
                                     ": empty field");
    try {
        std::size_t used = 0;
        Int v = std::stoll(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
        return v;
    } catch (const std::exception&) {
        throw parse_error("field table line " + std::to_string(line_no) +
                          ": bad integer '" + t + "'");
    }
}

}  // namespace

std::vector<CubicField> import_field_table(std::istream& in) {
    std::vector<CubicField> out;
    std::set<std::pair<Int, BinaryCubicForm>> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::size_t last = line.find_last_not_of(" \t\r");
        if (line.substr(first, last - first + 1) == "disc,c3,c2,c1,c0") continue;
        std::vector<std::string> tokens;
        std::stringstream row(line);
        std::string tok;
        while (std::getline(row, tok, ',')) tokens.push_back(tok);
        if (tokens.size() != 5)
            throw parse_error("field table line " + std::to_string(line_no) + ": expected "
                              "disc,c3,c2,c1,c0 but found " + std::to_string(tokens.size()) +
                              " fields");
        Int declared = parse_int_field(tokens[0], line_no);
        BinaryCubicForm f{parse_int_field(tokens[1], line_no), parse_int_field(tokens[2], line_no),
                          parse_int_field(tokens[3], line_no), parse_int_field(tokens[4], line_no)};
        Int computed;
        try {
            computed = f.discriminant();
        } catch (const overflow_guard&) {
            throw parse_error("field table line " + std::to_string(line_no) +
                              ": coefficients too large");
        }
        if (computed != declared)
            throw disc_mismatch("field table line " + std::to_string(line_no) + ": declared " +
                                std::to_string(declared) + " but the cubic has discriminant " +
                                std::to_string(computed));
        if (computed == 0)
            throw parse_error("field table line " + std::to_string(line_no) +
                              ": degenerate cubic");
        if (!is_irreducible(f))
            throw parse_error("field table line " + std::to_string(line_no) +
                              ": reducible cubic");
        if (!is_maximal(f))
            throw parse_error("field table line " + std::to_string(line_no) +
                              ": cubic defines a nonmaximal order");
        CanonicalForm straight = canonical_form(f);
        CubicField k;
        k.form = std::min(straight.rep, canonical_form(mirror(f)).rep);
        k.disc = computed;
        k.cyclic = is_square(computed);
        if (k.cyclic != (straight.stab_order == 3))
            throw error("field table line " + std::to_string(line_no) +
                        ": stabilizer contradicts the square-discriminant test");
        if (seen.insert({k.disc, k.form}).second) out.push_back(k);
    }
    std::sort(out.begin(), out.end(), [](const CubicField& x, const CubicField& y) {
        return std::pair(x.disc, x.form) < std::pair(y.disc, y.form);
    });
    return out;
}

std::vector<CubicField> import_field_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("field table: cannot open " + path);
    return import_field_table(in);
}

void export_field_table(std::ostream& out, const std::vector<CubicField>& fields) {
    out << "disc,a,b,c,d,galois_type\n";
    for (const auto& k : fields)
        out << k.disc << "," << k.form.a << "," << k.form.b << "," << k.form.c << ","
            << k.form.d << "," << (k.cyclic ? "cyclic" : "noncyclic") << "\n";
}

}  // namespace szeta
