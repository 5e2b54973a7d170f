// Copyright 2026 The qpt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance checks. One PASS/FAIL line per criterion; nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "qpt/boolfn.h"
#include "qpt/closed_forms.h"
#include "qpt/ensembles.h"
#include "qpt/linalg.h"
#include "qpt/parallel.h"
#include "qpt/spectra.h"
#include "qpt/testers.h"
#include "qpt/three_fold.h"

using namespace qpt;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string &what) {
        if (!cond) {
            ok = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void criterion(int id, const std::string &name, const std::function<void(Check &)> &body) {
    auto start = std::chrono::steady_clock::now();
    Check c;
    try {
        body(c);
    } catch (const std::exception &e) {
        c.ok = false;
        c.detail << " [exception: " << e.what() << "]";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("AC%-2d %s  %s:%s (%.1fs)\n", id, c.ok ? "PASS" : "FAIL", name.c_str(), c.detail.str().c_str(),
                secs);
    std::fflush(stdout);
    failures += !c.ok;
}

template <typename F>
double rate(int trials, const std::string &tag, F &&decide) {
    auto hits = run_indexed<int>(trials, 0, [&](size_t i) {
        RngStream rng(20261017, stream_id_for(i, tag));
        return decide(rng) ? 1 : 0;
    });
    int total = 0;
    for (int h : hits) {
        total += h;
    }
    return (double)total / trials;
}

}  // namespace

int main() {
    criterion(1, "Fourier identity, all 3-bit functions", [](Check &c) {
        double worst = 0;
        for (uint64_t g = 0; g < 256; g++) {
            auto f = BooleanFunction::from_mask(3, g);
            worst = std::max(worst, std::abs(fourier_monotonicity_statistic(f) - monotone_violation_probability(f)));
        }
        c.detail << " max gap " << worst;
        c.require(worst <= 1e-12, "gap <= 1e-12");
    });

    criterion(2, "monotonicity sandwich eps/n <= p <= 2 eps, n <= 4", [](Check &c) {
        uint64_t checked = 0, bad = 0;
        for (int n = 1; n <= 4; n++) {
            for (uint64_t g = 0; g < (uint64_t{1} << (1 << n)); g++) {
                auto f = BooleanFunction::from_mask(n, g);
                double eps = exact_distance_to_monotone(f).epsilon;
                double p = monotone_violation_probability(f);
                bad += !(eps / n <= p + 1e-12 && p <= 2 * eps + 1e-12);
                checked++;
            }
        }
        c.detail << " " << checked << " functions, " << bad << " violations";
        c.require(bad == 0, "no violations");
    });

    criterion(3, "symmetry sandwich eps <= v <= 2 eps, n <= 4", [](Check &c) {
        uint64_t checked = 0, bad = 0;
        for (int n = 1; n <= 4; n++) {
            for (uint64_t g = 0; g < (uint64_t{1} << (1 << n)); g++) {
                auto f = BooleanFunction::from_mask(n, g);
                double eps = exact_distance_to_symmetric(f).epsilon;
                double v = symmetry_violation_probability(f);
                bad += !(eps <= v + 1e-12 && v <= 2 * eps + 1e-12);
                checked++;
            }
        }
        c.detail << " " << checked << " functions, " << bad << " violations";
        c.require(bad == 0, "no violations");
    });

    criterion(4, "monotonicity tester n=9 eps=0.25 delta=0.1, 200 trials", [](Check &c) {
        const int n = 9, trials = 200;
        auto p = MonotonicityParams::make(n, 0.25, 0.1);
        std::vector<std::pair<std::string, BooleanFunction>> good{
            {"dictator", dictator(n)}, {"majority", majority(n)}, {"and", and_function(n)}, {"or", or_function(n)}};
        bool copies_ok = true;
        auto run = [&](const BooleanFunction &f, const std::string &tag, Decision want) {
            return rate(trials, tag, [&](RngStream &rng) {
                auto v = test_monotonicity(f, 0.25, 0.1, rng);
                if (v.copies_used != p.total_copies()) {
                    copies_ok = false;
                }
                return v.decision == want;
            });
        };
        for (auto &[name, f] : good) {
            double r = run(f, "ac4-" + name, Decision::Accept);
            c.detail << " " << name << " accept " << r;
            c.require(r >= 0.9, name + " accept >= 0.9");
        }
        double r = run(antidictator(n), "ac4-antidictator", Decision::Reject);
        c.detail << " antidictator reject " << r << " copies " << p.total_copies();
        c.require(r >= 0.9, "antidictator reject >= 0.9");
        c.require(copies_ok, "copies = m1 + m4 in every run");
    });

    criterion(5, "symmetry tester n=8 eps=0.3 delta=0.1, 200 trials", [](Check &c) {
        const int n = 8, trials = 200;
        auto d = exact_distance_to_symmetric(dictator(n));
        c.detail << " dictator distance " << d.mismatches << "/256";
        c.require(d.mismatches == 93, "dictator distance 93/256");
        for (auto &[name, f] : {std::pair{std::string("parity"), parity(n)}, std::pair{std::string("majority"), majority(n)}}) {
            double r = rate(trials, "ac5-" + name, [&](RngStream &rng) {
                return test_symmetry(f, 0.3, 0.1, rng).decision == Decision::Accept;
            });
            c.detail << " " << name << " accept " << r;
            c.require(r >= 0.9, name + " accept >= 0.9");
        }
        double r = rate(trials, "ac5-dictator", [&](RngStream &rng) {
            return test_symmetry(dictator(n), 0.3, 0.1, rng).decision == Decision::Reject;
        });
        c.detail << " dictator reject " << r;
        c.require(r >= 0.9, "dictator reject >= 0.9");
    });

    criterion(6, "triangle-freeness tester n=6 eps~=0.2 delta=0.2, 100 trials", [](Check &c) {
        const int n = 6, trials = 100;
        auto params = TriangleParams::make(0.2, 0.2);
        // 2 x1 + x2 + x3 >= 3.
        auto half = BooleanFunction::from_predicate(n, [&](uint64_t x) {
            int s = 2 * (int)coordinate_bit(x, 1, n) + (int)coordinate_bit(x, 2, n) + (int)coordinate_bit(x, 3, n);
            return s >= 3;
        });
        c.require(is_triangle_free(half), "halfspace certified triangle-free");
        double acc = rate(trials, "ac6-half", [&](RngStream &rng) {
            return test_triangle_freeness(half, params, rng).decision == Decision::Accept;
        });
        double rej = rate(trials, "ac6-one", [&](RngStream &rng) {
            return test_triangle_freeness(BooleanFunction::constant(n, true), params, rng).decision ==
                   Decision::Reject;
        });
        double zero = rate(trials, "ac6-zero", [&](RngStream &rng) {
            auto v = test_triangle_freeness(BooleanFunction::constant(n, false), params, rng);
            return v.decision == Decision::Accept && v.statistic == 0.0;
        });
        c.detail << " halfspace accept " << acc << " f=1 reject " << rej << " f=0 zero-statistic " << zero;
        c.require(acc >= 0.8, "halfspace accept >= 0.8");
        c.require(rej >= 0.8, "f=1 reject >= 0.8");
        c.require(zero == 1.0, "f=0 statistic exactly 0");
    });

    criterion(7, "MM tester n=6, 100 trials, bentness n <= 4", [](Check &c) {
        const int n = 6, trials = 100;
        const double delta = 1.0 / 3;
        double zero = rate(trials, "ac7-mm", [&](RngStream &rng) {
            auto draw = sample_mm_pair(n, MmFamily::F1, rng);
            auto v = test_mm(draw.f, delta, rng);
            return v.statistic == 0.0 && v.decision == Decision::Accept;
        });
        bool half_far = true;
        double rej = rate(trials, "ac7-dual", [&](RngStream &rng) {
            auto f = mm_dual(sample_balanced_function(n, rng));
            if (exact_distance_to_mm(f).epsilon != 0.5) {
                half_far = false;
            }
            return test_mm(f, delta, rng).decision == Decision::Reject;
        });
        uint64_t bent_bad = 0, bent_checked = 0;
        for (int k = 1; k <= 4; k++) {
            double want = std::pow(4.0, -k);
            for (uint64_t h = 0; h < (uint64_t{1} << (1 << k)); h++) {
                auto spec = walsh_transform(mm(BooleanFunction::from_mask(k, h)));
                for (double v : spec.coeffs) {
                    bent_bad += v * v != want;
                }
                bent_checked++;
            }
        }
        c.detail << " mm zero-statistic accept " << zero << " mm_dual reject " << rej << " bent " << bent_checked
                 << " h, " << bent_bad << " bad coefficients";
        c.require(zero == 1.0, "p_hat = 0 on every mm draw");
        c.require(rej >= 0.66, "mm_dual reject >= 0.66");
        c.require(half_far, "mm_dual(balanced h) exactly 1/2-far");
        c.require(bent_bad == 0, "bent for n <= 4");
    });

    criterion(8, "2-fold intersection n=8 eps=0.1 delta=0.1, 100 pairs", [](Check &c) {
        const int n = 8;
        double good = rate(100, "ac8", [&](RngStream &rng) {
            auto a = sample_uniform_function(n, rng), b = sample_uniform_function(n, rng);
            uint64_t both = 0;
            for (uint64_t x = 0; x < a.size(); x++) {
                both += a[x] && b[x];
            }
            auto e = estimate_intersection2(pair(a, b), 0.1, 0.1, rng);
            return std::abs(e.estimate - (double)both / (double)a.size()) <= 0.1;
        });
        c.detail << " within 0.1 in " << (int)std::lround(good * 100) << "/100";
        c.require(good >= 0.9, ">= 90 within 0.1");
    });

    criterion(9, "spectrum equivalence, string enumeration, census", [](Check &c) {
        double worst = 0;
        RngStream rng(20261017, 9);
        for (auto [n, t, m] : {std::tuple{3, 2, 2}, std::tuple{4, 2, 2}, std::tuple{3, 3, 2}}) {
            auto matching = build_layer_matching(n, m, rng);
            c.require(matching.achieved_m() == m, "matching of size m");
            double brute = trace_norm(build_difference_matrix(matching, t));
            auto cf = trace_norm_closed_form(ClosedFormParams::for_cube(n, m), t);
            worst = std::max(worst, std::abs(brute - cf.total));
            auto census = component_census(matching, t);
            auto [x1, x2] = x1_x2_split(ClosedFormParams::for_cube(n, m), t);
            c.require(census.components.size() == census.expected_components, "component count");
            c.require(BigInt(census.entries[0].u_size) == x1 && BigInt(census.entries[0].v_size) == x2,
                      "empty-type parts (x1, x2)");
            for (auto &e : census.entries) {
                if (e.k >= 1) {
                    c.require(BigInt(e.u_size) * 2 == N_closed(ClosedFormParams::for_cube(n, m), t, e.k) &&
                                  e.u_size == e.v_size,
                              "parts N(t,k)/2");
                }
            }
        }
        c.detail << " max |closed - brute| " << worst;
        c.require(worst <= 1e-8, "trace norms within 1e-8");
        uint64_t cases = 0, mismatches = 0;
        for (uint64_t l = 2; l <= 8; l++) {
            for (int m = 0; 2 * m <= (int)l; m++) {
                auto q = ClosedFormParams::for_alphabet(l, m);
                for (int t = 0; t <= 4; t++) {
                    for (int p = 0; p <= m; p++) {
                        mismatches += T_closed(q, t, p) != T_enumerate(q, t, p);
                        mismatches += N_closed(q, t, p) != N_enumerate(q, t, p);
                        cases += 2;
                    }
                }
            }
        }
        c.detail << "; " << cases << " T/N cases, " << mismatches << " mismatches";
        c.require(mismatches == 0, "T/N equal enumeration");
    });

    criterion(10, "twin-ensemble distinguishability n=8", [](Check &c) {
        RngStream rng(20261017, 10);
        auto matching = build_layer_matching(8, 16, rng);
        int m = matching.achieved_m();
        auto q = ClosedFormParams::for_cube(8, m);
        double eps = m / 256.0;
        int t1 = (int)std::ceil(1 / eps), t2 = (int)std::ceil(2 / eps);
        int first = -1;
        double prev = 0;
        bool monotone = true;
        for (int t = 0; t <= t2; t++) {
            double s = star_term(q, t);
            monotone &= s >= prev - 1e-12;
            prev = s;
            if (first < 0 && s >= 0.5) {
                first = t;
            }
        }
        double total = trace_norm_closed_form(q, t1).total;
        double success = helstrom_from_trace_norm(trace_norm_closed_form(q, t2).total);
        c.detail << " m=" << m << " eps=" << eps << " star >= 1/2 from t=" << first << " (1/eps=" << t1
                 << ") ||A||_1(t1)=" << total << " Helstrom(t2=" << t2 << ")=" << success;
        c.require(m > 0, "nonempty matching");
        c.require(monotone, "star term nondecreasing");
        c.require(first >= 0 && first <= t1, "star term >= 1/2 by ceil(1/eps)");
        c.require(total >= 0.5, "closed-form ||A||_1 >= 1/2 at ceil(1/eps)");
        c.require(success >= 2.0 / 3, "Helstrom >= 2/3 at ceil(2/eps)");
    });

    criterion(11, "3-fold identities and separation", [](Check &c) {
        RngStream rng(20261017, 11);
        auto r22 = distinct_projector_check(2, 2, 0, rng);
        c.detail << " n=2 t=2 projected dev " << r22.max_projected_deviation << " ||E0-E1||_1 "
                 << r22.trace_norm_difference;
        c.require(r22.method == "enumeration", "full enumeration at n=2");
        c.require(r22.max_projected_deviation <= 1e-12, "projected deviation <= 1e-12");
        c.require(r22.trace_norm_difference <= r22.bound + 1e-6, "n=2 bound");
        for (int n = 2; n <= 3; n++) {
            auto r1 = distinct_projector_check(n, 1, 0, rng);
            c.require(r1.trace_norm_difference == 0.0, "t=1 difference is 0");
        }
        auto r32 = distinct_projector_check(3, 2, 0, rng);
        c.detail << "; n=3 t=2 ||E0-E1||_1 " << r32.trace_norm_difference << " bound " << r32.bound;
        c.require(r32.trace_norm_difference <= r32.bound + 1e-6, "n=3 bound");

        // n = 2: every dense triple against every xor triple.
        std::vector<BooleanFunction> dense, xors;
        for (uint64_t a = 0; a < 16; a++) {
            for (uint64_t b = 0; b < 16; b++) {
                auto fa = BooleanFunction::from_mask(2, a), fb = BooleanFunction::from_mask(2, b);
                xors.push_back(triple(fa, fb, set_xor(fa, fb)));
                for (uint64_t cc = 0; cc < 16; cc++) {
                    if (std::popcount(a & b & cc) >= 1) {
                        dense.push_back(triple(fa, fb, BooleanFunction::from_mask(2, cc)));
                    }
                }
            }
        }
        double sep2 = certify_separation(dense, xors);
        // n = 6: triples with |A n B n C| = 4 = 2^6/16 and C = A xor B elsewhere are the
        // closest dense triples; the per-point minimization is exact over all xor triples.
        double min6 = 1;
        std::vector<BooleanFunction> dense6, xor6;
        for (int i = 0; i < 200; i++) {
            auto t = sample_set_triple(6, TripleMode::Xor, rng);
            xor6.push_back(t.function());
            SetTriple tight = t;
            uint64_t placed = 0;
            std::vector<uint8_t> c_bits(64);
            for (uint64_t x = 0; x < 64; x++) {
                c_bits[x] = t.c[x];
            }
            std::vector<uint8_t> a_bits(64), b_bits(64);
            for (uint64_t x = 0; x < 64; x++) {
                a_bits[x] = t.a[x];
                b_bits[x] = t.b[x];
            }
            for (uint64_t x = 0; x < 64 && placed < 4; x++) {
                uint64_t z = (x * 37 + (uint64_t)i) % 64;
                if (!(a_bits[z] && b_bits[z] && c_bits[z])) {
                    a_bits[z] = b_bits[z] = c_bits[z] = 1;
                    placed++;
                }
            }
            auto mk = [](const std::vector<uint8_t> &bits) {
                return BooleanFunction::from_predicate(6, [&](uint64_t x) {
                    return bits[x] != 0;
                });
            };
            tight.a = mk(a_bits);
            tight.b = mk(b_bits);
            // C = A xor B away from the planted points.
            tight.c = BooleanFunction::from_predicate(6, [&](uint64_t x) {
                return (a_bits[x] && b_bits[x] && c_bits[x]) || (a_bits[x] != b_bits[x]);
            });
            tight.mode = TripleMode::Independent;
            if (tight.triple_intersection() < 4) {
                continue;
            }
            min6 = std::min(min6, distance_to_xor_family(tight));
            dense6.push_back(tight.function());
            auto random_dense = sample_set_triple(6, TripleMode::Independent, rng);
            if (random_dense.triple_intersection() >= 4) {
                min6 = std::min(min6, distance_to_xor_family(random_dense));
                dense6.push_back(random_dense.function());
            }
        }
        double sep6 = certify_separation(dense6, xor6);
        c.detail << "; separation n=2 exhaustive " << sep2 << ", n=6 exact family minimum " << min6
                 << ", sampled " << sep6;
        c.require(sep2 >= 1.0 / 64, "n=2 separation >= 1/64");
        c.require(min6 >= 1.0 / 64 - 1e-15, "n=6 minimum >= 1/64");
        c.require(sep6 >= 1.0 / 64 - 1e-15, "n=6 sampled separation >= 1/64");
    });

    criterion(12, "classical baseline f=1, n=9", [](Check &c) {
        const int n = 9, runs = 1000;
        auto one = BooleanFunction::constant(n, true);
        double prev_rate = -1;
        bool trend = true;
        for (int q : {8, 16, 32, 64}) {
            auto counts = run_indexed<int64_t>(runs, 0, [&](size_t i) {
                RngStream rng(20261017, stream_id_for(i, "ac12-" + std::to_string(q)));
                return classical_triangle_baseline(one, q, rng);
            });
            double mean = 0, sq = 0, witnessed = 0;
            for (auto v : counts) {
                mean += (double)v;
                sq += (double)v * (double)v;
                witnessed += v > 0;
            }
            mean /= runs;
            double sd = std::sqrt(std::max(0.0, sq / runs - mean * mean) / runs);
            double bound = std::pow((double)q, 3) / std::ldexp(1.0, n);
            double expected = q * (q - 1.0) * (q - 2.0) / 6 / std::ldexp(1.0, n);
            witnessed /= runs;
            c.detail << " q=" << q << ": mean " << mean << " (C(q,3)/2^n " << expected << ", q^3/2^n " << bound
                     << ") witness rate " << witnessed;
            c.require(mean <= bound + 3 * sd, "mean <= q^3/2^n + 3 sigma");
            c.require(std::abs(mean - expected) <= 5 * sd + 1e-12, "mean near C(q,3)/2^n");
            trend &= witnessed >= prev_rate;
            prev_rate = witnessed;
        }
        c.require(trend, "witness rate nondecreasing in q");
    });

    std::printf("%s: %d of 12 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
