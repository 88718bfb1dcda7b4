// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  Budgets are enforced, not advisory; a slow pass is a fail.
#include <szeta/arith.hpp>
#include <szeta/dirichlet.hpp>
#include <szeta/enumerate.hpp>
#include <szeta/quadratic.hpp>
#include <szeta/witness.hpp>

#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

using namespace szeta;

namespace {

int criteria_failed = 0;

void detail(const std::string& msg) { std::fprintf(stderr, "    %s\n", msg.c_str()); }

template <typename Fn>
void criterion(int number, const char* name, double budget_seconds, Fn body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body();
    } catch (const std::exception& e) {
        detail(std::string("exception: ") + e.what());
    }
    double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > budget_seconds) {
        detail("over budget: " + std::to_string(dt) + "s > " +
               std::to_string(budget_seconds) + "s");
        ok = false;
    }
    std::printf("%s criterion %d: %s (%.2fs, budget %.0fs)\n", ok ? "PASS" : "FAIL",
                number, name, dt, budget_seconds);
    if (!ok) ++criteria_failed;
}

EnumerateOptions wide_opts() {
    EnumerateOptions o;
    o.threads = 4;
    return o;
}

}  // namespace

int main() {
    setvbuf(stdout, nullptr, _IOLBF, 0);

    criterion(1, "fundamental-discriminant identities exact to 100000", 10.0, [] {
        const Int X = 100000;
        bool ok = true;
        for (auto v :
             {QuadVariant::absolute, QuadVariant::signed_, QuadVariant::positive}) {
            CoeffSeries lhs = quad_series_lhs(v, X);
            CoeffSeries rhs = quad_series_rhs(v, X);
            for (Int n = 1; n <= X; ++n)
                if (!(lhs.at(n) == rhs.at(n))) {
                    detail("variant " + std::to_string(int(v)) + " first differs at n = " +
                           std::to_string(n));
                    ok = false;
                    break;
                }
        }
        ok = ok && quad_series_lhs(QuadVariant::absolute, 10).at(8) == Rat(2) &&
             quad_series_lhs(QuadVariant::signed_, 10).at(8) == Rat(0) &&
             quad_series_lhs(QuadVariant::positive, 10).at(5) == Rat(1);
        return ok;
    });

    criterion(2, "series assembly equals orbit enumeration to 10000, both signs", 300.0,
              [] {
                  const Int X = 10000;
                  auto fields = fields_in_range(-X, X, wide_opts());
                  for (int sign : {-1, +1}) {
                      CoeffSeries direct = shintani_xi_direct(sign, X, wide_opts());
                      CoeffSeries assembled = dw_xi(sign, X, fields, X);
                      for (Int n = 1; n <= X; ++n)
                          if (!(direct.at(n) == assembled.at(n))) {
                              detail("sign " + std::to_string(sign) +
                                     " first differs at n = " + std::to_string(n));
                              return false;
                          }
                  }
                  return true;
              });

    // Criterion 3 builds the negative census; criterion 7 reuses it.
    std::map<Int, Int> neg_counts;
    Int neg_fields_to_1e5 = 0;

    criterion(3, "negative-side counting formula matches the census to 1000000", 600.0,
              [&] {
                  const Int CAP = 1000000;
                  for (const auto& f : fields_in_range(-CAP, -1, wide_opts())) {
                      ++neg_counts[f.disc];
                      if (f.disc >= -100000) ++neg_fields_to_1e5;
                  }
                  int discs = 0;
                  for (Int d : fundamental_discriminants(-3000, -3)) {
                      if (((d % 9) + 9) % 9 != 3) continue;
                      if (class_number(d) % 3 == 0) continue;
                      ++discs;
                      Int nmax = isqrt(CAP / (-d));
                      CoeffSeries s = cm_minus(d, nmax);
                      for (Int n = 1; n <= nmax; ++n) {
                          auto it = neg_counts.find(d * n * n);
                          Int want = it == neg_counts.end() ? 0 : it->second;
                          if (!(s.at(n) == Rat(want))) {
                              detail("d = " + std::to_string(d) + ", n = " +
                                     std::to_string(n));
                              return false;
                          }
                      }
                  }
                  if (discs == 0) return false;
                  detail("checked " + std::to_string(discs) + " admissible discs");
                  return true;
              });

    criterion(4,
              "positive-side counting formula matches the census to 1000000, "
              "resolvent lookups always succeed",
              600.0, [] {
                  const Int CAP = 1000000;
                  std::map<Int, Int> counts;
                  for (const auto& f : fields_in_range(1, CAP, wide_opts()))
                      ++counts[f.disc];
                  int discs = 0;
                  for (Int d : fundamental_discriminants(3, 3000)) {
                      if (((d % 9) + 9) % 9 != 3) continue;
                      Int m = -(d / 3);
                      if (!is_fundamental_discriminant(m)) continue;
                      if (class_number(m) % 3 == 0) continue;
                      ++discs;
                      try {
                          find_E(d, wide_opts());
                      } catch (const std::exception& e) {
                          detail("resolvent lookup failed for d = " + std::to_string(d) +
                                 ": " + e.what());
                          return false;
                      }
                      Int nmax = isqrt(CAP / d);
                      CoeffSeries s = cm_plus(d, nmax, nullptr, wide_opts());
                      for (Int n = 1; n <= nmax; ++n) {
                          auto it = counts.find(d * n * n);
                          Int want = it == counts.end() ? 0 : it->second;
                          if (!(s.at(n) == Rat(want))) {
                              detail("d = " + std::to_string(d) + ", n = " +
                                     std::to_string(n));
                              return false;
                          }
                      }
                  }
                  if (discs == 0) return false;
                  detail("checked " + std::to_string(discs) + " admissible discs");
                  return true;
              });

    criterion(5,
              "witness certificates close for all five series kinds at k = 3, "
              "deterministically; the negative k = 1 witness is -15 with prime 19",
              3000.0, [] {
                  WitnessOptions threaded;
                  threaded.threads = 4;
                  WitnessOptions serial;
                  serial.threads = 1;
                  const SeriesId ids[] = {
                      {SeriesKind::xi_minus, Rat(), Rat()},
                      {SeriesKind::xi_plus, Rat(), Rat()},
                      {SeriesKind::f_minus, Rat(), Rat()},
                      {SeriesKind::f_plus, Rat(), Rat()},
                      {SeriesKind::combo, Rat(1, 2), Rat(2)},
                  };
                  for (const SeriesId& id : ids) {
                      WitnessCertificate cert = build_certificate(id, 3, threaded);
                      if (!cert.verdict) {
                          detail(std::string(series_kind_name(id.kind)) +
                                 ": verdict false");
                          return false;
                      }
                      std::vector<std::string> reasons;
                      if (!verify_certificate(cert, &reasons, threaded)) {
                          for (const auto& r : reasons)
                              detail(std::string(series_kind_name(id.kind)) + ": " + r);
                          return false;
                      }
                      WitnessCertificate again = build_certificate(id, 3, serial);
                      if (certificate_to_json(cert) != certificate_to_json(again)) {
                          detail(std::string(series_kind_name(id.kind)) +
                                 ": thread count changed the certificate bytes");
                          return false;
                      }
                  }
                  WitnessCertificate one =
                      build_certificate({SeriesKind::xi_minus, Rat(), Rat()}, 1, threaded);
                  if (one.discs != std::vector<Int>{-15} ||
                      one.primes != std::vector<Int>{19} || !one.verdict) {
                      detail("negative k = 1 certificate deviates from -15 / 19");
                      return false;
                  }
                  return true;
              });

    criterion(6, "box oracle and production enumeration list the same classes", 120.0, [] {
        // Exact equality where the box is generous relative to the disc.
        for (Int d = -60; d <= 60; ++d) {
            if (d == 0) continue;
            if (brute_force_classes(d, 16) != enumerate_classes(d, d)) {
                detail("equality fails at disc " + std::to_string(d));
                return false;
            }
        }
        // Two-sided containment on the wider range: every box class is a
        // production class, and every production class small enough to sit
        // in the box is found by it.
        for (Int d = -300; d <= 300; ++d) {
            if (d == 0) continue;
            auto box = brute_force_classes(d, 12);
            auto prod = enumerate_classes(d, d);
            for (const auto& c : box) {
                bool found = false;
                for (const auto& p : prod) found = found || p == c;
                if (!found) {
                    detail("box class missing from production at disc " +
                           std::to_string(d));
                    return false;
                }
            }
            for (const auto& p : prod) {
                Int m = std::max({p.rep.a < 0 ? -p.rep.a : p.rep.a,
                                  p.rep.b < 0 ? -p.rep.b : p.rep.b,
                                  p.rep.c < 0 ? -p.rep.c : p.rep.c,
                                  p.rep.d < 0 ? -p.rep.d : p.rep.d});
                if (m > 12) continue;
                bool found = false;
                for (const auto& c : box) found = found || p == c;
                if (!found) {
                    detail("production class missing from box at disc " +
                           std::to_string(d));
                    return false;
                }
            }
        }
        return true;
    });

    criterion(7, "mean field count per fundamental disc in [-100000, -1] is near 1/2",
              60.0, [&] {
                  Int discs = Int(fundamental_discriminants(-100000, -1).size());
                  double mean = double(neg_fields_to_1e5) / double(discs);
                  detail(std::to_string(neg_fields_to_1e5) + " fields over " +
                         std::to_string(discs) + " discs, mean " + std::to_string(mean));
                  return mean > 0.35 && mean < 0.65;
              });

    criterion(8, "bundled field table equals the census", 60.0, [] {
        auto bundled = import_field_table(std::string(SZETA_DATA_DIR) +
                                          "/cubic_fields_1000.csv");
        auto census = fields_in_range(-1000, 1000, wide_opts());
        if (bundled != census) {
            detail("bundled " + std::to_string(bundled.size()) + " rows, census " +
                   std::to_string(census.size()));
            return false;
        }
        return true;
    });

    if (criteria_failed == 0) {
        std::puts("acceptance: all criteria passed");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", criteria_failed);
    return 1;
}
