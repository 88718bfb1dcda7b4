// Command-line surface: enumeration, series coefficients, identity checks,
// witness certificates.  The only component that touches files.
#include <szeta/arith.hpp>
#include <szeta/dirichlet.hpp>
#include <szeta/enumerate.hpp>
#include <szeta/errors.hpp>
#include <szeta/quadratic.hpp>
#include <szeta/witness.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

namespace {

using szeta::Int;
using szeta::Rat;

// Exit codes shared by every subcommand.
constexpr int kOk = 0;
constexpr int kFailure = 1;          // verification failures, findings
constexpr int kUsage = 2;            // bad arguments or malformed input
constexpr int kBound = 3;            // enumeration bound exceeded
constexpr int kRouteDisagree = 4;    // independent routes produced different values
constexpr int kSearchExhausted = 5;  // prime/disc search ceiling reached

// Write a whole file atomically: temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content) {
    std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw szeta::error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out.flush()) throw szeta::error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_file_atomic(out_path, content);
}

struct CommonOpts {
    int threads = 1;
    Int enumeration_bound = 4000000;
};

void add_common(CLI::App* cmd, CommonOpts& common) {
    cmd->configurable();  // lets a --config file carry a [subcommand] section
    cmd->add_option("--threads", common.threads, "worker threads for enumeration")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--enumeration-bound", common.enumeration_bound,
                    "largest |disc| the enumeration may touch")
        ->check(CLI::PositiveNumber);
}

szeta::EnumerateOptions enum_opts(const CommonOpts& common) {
    szeta::EnumerateOptions opts;
    opts.threads = common.threads;
    opts.disc_limit = common.enumeration_bound;
    return opts;
}

// ---- enumerate ----

int run_enumerate(Int lo, Int hi, const CommonOpts& common, const std::string& out_path) {
    std::ostringstream csv;
    szeta::write_classes_csv_header(csv);
    szeta::enumerate_classes_stream(
        lo, hi, [&](const szeta::OrbitClass& c) { szeta::write_classes_csv_row(csv, c); },
        enum_opts(common));
    emit(out_path, csv.str());
    return kOk;
}

// ---- coeffs ----

int run_coeffs(const std::string& series, const std::string& method, Int limit,
               bool verify_both, const CommonOpts& common, const std::string& out_path) {
    szeta::SeriesKind kind = szeta::series_kind_from_name(series);
    if (kind == szeta::SeriesKind::combo)
        throw szeta::precondition_violated("coeffs: combo has no single coefficient stream");
    bool is_xi = kind == szeta::SeriesKind::xi_minus || kind == szeta::SeriesKind::xi_plus;
    int sign = (kind == szeta::SeriesKind::xi_minus || kind == szeta::SeriesKind::f_minus)
                   ? -1
                   : +1;
    if (!is_xi && (method == "dw" || verify_both))
        throw szeta::precondition_violated(
            "coeffs: the dw method expands xi- and xi+ only; field counts have no "
            "second series route");

    auto by_forms = [&]() -> szeta::CoeffSeries {
        auto opts = enum_opts(common);
        if (is_xi) return szeta::shintani_xi_direct(sign, limit, opts);
        szeta::CoeffSeries s(limit);
        Int lo = sign > 0 ? 1 : -limit;
        Int hi = sign > 0 ? limit : -1;
        std::map<Int, Int> counts;
        for (const auto& f : szeta::fields_in_range(lo, hi, opts)) ++counts[f.disc];
        for (auto [d, c] : counts) s.at(d < 0 ? -d : d) = Rat(c);
        return s;
    };
    auto by_dw = [&]() -> szeta::CoeffSeries {
        auto opts = enum_opts(common);
        Int cover = limit;
        auto fields = szeta::fields_in_range(-cover, cover, opts);
        return szeta::dw_xi(sign, limit, fields, cover);
    };

    szeta::CoeffSeries s = method == "dw" ? by_dw() : by_forms();
    if (verify_both) {
        szeta::CoeffSeries other = method == "dw" ? by_forms() : by_dw();
        for (Int n = 1; n <= limit; ++n)
            if (!(s.at(n) == other.at(n)))
                throw szeta::route_disagreement(
                    "coeffs: methods disagree at n = " + std::to_string(n) + ": " +
                    s.at(n).str() + " vs " + other.at(n).str());
    }
    std::ostringstream csv;
    szeta::write_series_csv(csv, s);
    emit(out_path, csv.str());
    return kOk;
}

// ---- verify ----

int run_verify(const std::string& check, Int limit, std::vector<Int> d_range,
               const CommonOpts& common) {
    bool all_pass = true;
    auto report = [&](const std::string& name, Int first_bad) {
        if (first_bad == 0) {
            std::cout << "PASS " << name << "\n";
        } else {
            std::cout << "FAIL " << name << " first mismatch at n = " << first_bad << "\n";
            all_pass = false;
        }
    };

    if (check == "quadratic") {
        using szeta::QuadVariant;
        const std::pair<QuadVariant, const char*> variants[] = {
            {QuadVariant::absolute, "quadratic absolute"},
            {QuadVariant::signed_, "quadratic signed"},
            {QuadVariant::positive, "quadratic positive"},
        };
        for (auto [v, name] : variants) {
            szeta::CoeffSeries lhs = szeta::quad_series_lhs(v, limit);
            szeta::CoeffSeries rhs = szeta::quad_series_rhs(v, limit);
            Int bad = 0;
            for (Int n = 1; n <= limit; ++n)
                if (!(lhs.at(n) == rhs.at(n))) { bad = n; break; }
            report(name, bad);
        }
    } else if (check == "dw") {
        auto opts = enum_opts(common);
        auto fields = szeta::fields_in_range(-limit, limit, opts);
        for (int sign : {-1, +1}) {
            szeta::CoeffSeries direct = szeta::shintani_xi_direct(sign, limit, opts);
            szeta::CoeffSeries dw = szeta::dw_xi(sign, limit, fields, limit);
            Int bad = 0;
            for (Int n = 1; n <= limit; ++n)
                if (!(direct.at(n) == dw.at(n))) { bad = n; break; }
            report(sign < 0 ? "dw xi-" : "dw xi+", bad);
        }
    } else if (check == "cm") {
        if (d_range.size() != 2 || d_range[0] > d_range[1])
            throw szeta::precondition_violated("verify: --d-range needs lo <= hi");
        auto opts = enum_opts(common);
        for (int sign : {-1, +1}) {
            Int lo = std::max<Int>(d_range[0], sign < 0 ? -limit : 3);
            Int hi = std::min<Int>(d_range[1], sign < 0 ? -3 : limit);
            if (lo > hi) continue;
            std::map<Int, Int> counts;
            Int cover_lo = sign < 0 ? -limit : 1;
            Int cover_hi = sign < 0 ? -1 : limit;
            for (const auto& f : szeta::fields_in_range(cover_lo, cover_hi, opts))
                ++counts[f.disc];
            int discs = 0;
            Int bad_d = 0, bad_n = 0;
            for (Int d : szeta::fundamental_discriminants(lo, hi)) {
                if (((d % 9) + 9) % 9 != 3) continue;
                if (sign < 0) {
                    if (szeta::class_number(d) % 3 == 0) continue;
                } else {
                    Int m = -(d / 3);
                    if (!szeta::is_fundamental_discriminant(m)) continue;
                    if (szeta::class_number(m) % 3 == 0) continue;
                }
                ++discs;
                Int t = d < 0 ? -d : d;
                Int nmax = szeta::isqrt(limit / t);
                if (nmax < 1) continue;
                szeta::CoeffSeries s = sign < 0 ? szeta::cm_minus(d, nmax)
                                                : szeta::cm_plus(d, nmax, nullptr, opts);
                for (Int n = 1; n <= nmax && bad_d == 0; ++n) {
                    auto it = counts.find(d * n * n);
                    Int want = it == counts.end() ? 0 : it->second;
                    if (!(s.at(n) == Rat(want))) { bad_d = d; bad_n = n; }
                }
                if (bad_d != 0) break;
            }
            std::string name = std::string(sign < 0 ? "cm negative" : "cm positive") + " (" +
                               std::to_string(discs) + " admissible discs)";
            if (bad_d == 0) {
                std::cout << "PASS " << name << "\n";
            } else {
                std::cout << "FAIL " << name << " first mismatch at d = " << bad_d
                          << ", n = " << bad_n << "\n";
                all_pass = false;
            }
        }
    } else {
        throw szeta::precondition_violated("verify: unknown check " + check);
    }
    return all_pass ? kOk : kFailure;
}

// ---- witness / certify ----

int run_witness(const std::string& series, Int k, const std::string& c1,
                const std::string& c2, const CommonOpts& common, Int prime_ceiling,
                const std::string& out_path) {
    szeta::SeriesId id{szeta::series_kind_from_name(series), Rat(), Rat()};
    if (id.kind == szeta::SeriesKind::combo) {
        if (c1.empty() || c2.empty())
            throw szeta::precondition_violated("witness: combo requires --c1 and --c2");
        try {
            id.c1 = Rat::parse(c1);
            id.c2 = Rat::parse(c2);
        } catch (const szeta::parse_error& e) {
            throw szeta::parse_error(
                std::string(e.what()) +
                "; combo coefficients are exact rationals written as n or n/d. "
                "Irrational constants have no exact form here: replace them by "
                "a nearby rational (the verdict is about exact coefficients, "
                "so the choice of rational is part of the claim)");
        }
    } else if (!c1.empty() || !c2.empty()) {
        throw szeta::precondition_violated("witness: --c1/--c2 apply to combo only");
    }
    szeta::WitnessOptions opts;
    opts.threads = common.threads;
    opts.enumeration_bound = common.enumeration_bound;
    opts.prime_ceiling = prime_ceiling;
    szeta::WitnessCertificate cert = szeta::build_certificate(id, k, opts);
    emit(out_path, szeta::certificate_to_json(cert));
    if (!cert.verdict) {
        std::cerr << "witness: certificate built but verdict is false\n";
        return kFailure;
    }
    return kOk;
}

int run_certify(const std::string& in_path, const CommonOpts& common) {
    std::ifstream in(in_path, std::ios::binary);
    if (!in) throw szeta::parse_error("certify: cannot open " + in_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    szeta::WitnessCertificate cert = szeta::certificate_from_json(buf.str());
    szeta::WitnessOptions opts;
    opts.threads = common.threads;
    std::vector<std::string> reasons;
    bool good = szeta::verify_certificate(cert, &reasons, opts);
    if (good) {
        std::cout << "certificate verified: verdict true reconfirmed\n";
        return kOk;
    }
    std::cout << "certificate rejected:\n";
    for (const auto& r : reasons) std::cout << "  " << r << "\n";
    return kFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Dirichlet-series coefficients of Shintani zeta functions "
                 "for binary cubic forms, with non-representability certificates"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read defaults from a config file");

    CommonOpts common;
    Int prime_ceiling = 10000000;
    std::string out_path;

    auto* cmd_enum = app.add_subcommand("enumerate", "class list for a disc range as CSV");
    Int disc_min = 0, disc_max = 0;
    cmd_enum->add_option("--disc-min", disc_min, "lower end of the disc range")->required();
    cmd_enum->add_option("--disc-max", disc_max, "upper end of the disc range")->required();
    cmd_enum->add_option("--out", out_path, "output path (default stdout)");
    add_common(cmd_enum, common);

    auto* cmd_coeffs = app.add_subcommand("coeffs", "series coefficients as CSV");
    std::string series, method = "forms";
    Int limit = 10000;
    bool verify_both = false;
    cmd_coeffs->add_option("--series", series, "xi-, xi+, f-, f+")
        ->required()
        ->check(CLI::IsMember({"xi-", "xi+", "f-", "f+"}));
    cmd_coeffs->add_option("--method", method, "forms (orbit enumeration) or dw (field sum)")
        ->check(CLI::IsMember({"forms", "dw"}));
    cmd_coeffs->add_option("--limit", limit, "truncation index")->check(CLI::PositiveNumber);
    cmd_coeffs->add_flag("--verify-both", verify_both,
                         "compute both methods and fail on any mismatch");
    cmd_coeffs->add_option("--out", out_path, "output path (default stdout)");
    add_common(cmd_coeffs, common);

    auto* cmd_verify = app.add_subcommand("verify", "check the series identities");
    std::string check;
    std::vector<Int> d_range{-3000, -3};
    cmd_verify->add_option("--check", check, "quadratic, dw, or cm")
        ->required()
        ->check(CLI::IsMember({"quadratic", "dw", "cm"}));
    cmd_verify->add_option("--limit", limit, "coefficient range to compare")
        ->check(CLI::PositiveNumber);
    cmd_verify->add_option("--d-range", d_range, "disc range for the cm check (lo hi)")
        ->expected(2);
    add_common(cmd_verify, common);

    auto* cmd_witness = app.add_subcommand("witness", "build a certificate");
    std::string wseries, c1_text, c2_text;
    Int k = 3;
    cmd_witness->add_option("--series", wseries, "xi-, xi+, f-, f+, combo")
        ->required()
        ->check(CLI::IsMember({"xi-", "xi+", "f-", "f+", "combo"}));
    cmd_witness->add_option("--k", k, "number of witness discriminants")
        ->check(CLI::PositiveNumber);
    cmd_witness->add_option("--c1", c1_text, "combo coefficient C1, exact rational like 3/2");
    cmd_witness->add_option("--c2", c2_text, "combo coefficient C2, exact rational");
    cmd_witness->add_option("--prime-ceiling", prime_ceiling, "prime search ceiling")
        ->check(CLI::PositiveNumber);
    cmd_witness->add_option("--out", out_path, "certificate path")->required();
    add_common(cmd_witness, common);

    auto* cmd_certify = app.add_subcommand("certify", "recheck a certificate");
    std::string in_path;
    cmd_certify->add_option("--in", in_path, "certificate path")->required();
    add_common(cmd_certify, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    // The witness subcommand defaults to the larger bound its own defaults
    // need; explicit --enumeration-bound always wins.
    if (cmd_witness->parsed() && !cmd_witness->count("--enumeration-bound"))
        common.enumeration_bound = szeta::WitnessOptions{}.enumeration_bound;

    try {
        if (cmd_enum->parsed()) return run_enumerate(disc_min, disc_max, common, out_path);
        if (cmd_coeffs->parsed())
            return run_coeffs(series, method, limit, verify_both, common, out_path);
        if (cmd_verify->parsed()) return run_verify(check, limit, d_range, common);
        if (cmd_witness->parsed())
            return run_witness(wseries, k, c1_text, c2_text, common, prime_ceiling, out_path);
        if (cmd_certify->parsed()) return run_certify(in_path, common);
    } catch (const szeta::bound_exceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBound;
    } catch (const szeta::search_exhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSearchExhausted;
    } catch (const szeta::route_disagreement& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRouteDisagree;
    } catch (const szeta::precondition_violated& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const szeta::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const szeta::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kUsage;
}
