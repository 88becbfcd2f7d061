// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "oracles.hpp"
#include "sred/io.hpp"
#include "sred/survey.hpp"

using namespace sred;
using nlohmann::json;

namespace {

NumberField q(long d) { return NumberField::create({-d, 0, 1}); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string run_command(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  status = pclose(p);
  return out;
}

Outcome criterion1() {
  int status = 0;
  const std::string cmd = std::string("\"") + SRED_CLI_PATH + "\" census --field \"" + SRED_EXAMPLES_DIR +
                          "/fields/q_sqrt73.json\" --C 'sqrt(2)' --format json";
  std::string out = run_command(cmd, status);
  if (status != 0) return {false, "cli exit status " + std::to_string(status)};
  json j = json::parse(out);
  std::size_t principal = 0, usual = 0;
  std::vector<double> positions;
  for (const auto& e : j["entries"]) {
    if (e["class"] != 0) continue;
    ++principal;
    usual += e["usual_reduced"].get<bool>();
    positions.push_back(e["position"].get<double>());
  }
  const double ell = j["circle_length"].get<double>();
  bool sym = positions_symmetric(positions, ell, 1e-9);
  std::ostringstream s;
  s << "principal " << principal << " (want 11), usual-reduced " << usual << " (want 9), symmetric " << sym;
  return {principal == 11 && usual == 9 && j["count"] == 11 && sym, s.str()};
}

Outcome criterion2() {
  auto F = q(7);
  auto L = PlainLattice::span(F, {F.one(), F.element({Rat(1, 4), Rat(1, 4)})});
  auto c1 = check_strongly_c_reduced(L, ReductionConstant::parse("1"));
  auto lam = gram_of(L).exact_form(c1.shortest.coeffs);
  bool at1 = is_strongly_c_reduced(L, ReductionConstant::parse("1"));
  bool at2 = is_strongly_c_reduced(L, ReductionConstant::parse("2"));
  bool atr2 = is_strongly_c_reduced(L, ReductionConstant::parse("sqrt(2)"));
  std::ostringstream s;
  s << "lambda_1^2 = " << (lam ? lam->get_str() : "?") << ", C=1 " << at1 << ", C=2 " << at2 << ", C=sqrt2 " << atr2;
  return {lam && *lam == 1 && !at1 && at2 && atr2, s.str()};
}

const std::vector<std::string> kCensusC{"1", "sqrt(2)", "2"};

Outcome criterion3() {
  std::size_t fields = 0, entries = 0, bound_violations = 0, mismatches = 0;
  for (long d : oracle::real_quadratic_radicands(200)) {
    ++fields;
    auto F = q(d);
    const long D = F.discriminant().get_si();
    for (const auto& c : kCensusC) {
      auto C = ReductionConstant::parse(c);
      auto census = enumerate_sred(F, C);
      for (const auto& e : census.entries) {
        ++entries;
        // N <= C^2 sqrt(D)  <=>  N^2 <= C^4 D
        Rat n(e.inverse_norm);
        if (n * n > C.squared() * C.squared() * D) ++bound_violations;
      }
      // Oracle over every norm up to C^2 sqrt(D) rounded up, so it does not rely on the library bound.
      const long oracle_bound = static_cast<long>(std::ceil(C.value() * C.value() * std::sqrt(double(D)))) + 1;
      auto expected = oracle::quadratic_census(d, oracle_bound, C.squared());
      std::vector<std::pair<long, long>> want, got;
      for (const auto& x : expected) want.emplace_back(x.a, x.c);
      for (const auto& e : census.entries) got.emplace_back(e.inverse.hnf()(0, 0).get_si(), e.inverse.hnf()(0, 1).get_si());
      std::sort(want.begin(), want.end());
      std::sort(got.begin(), got.end());
      if (want != got) ++mismatches;
    }
  }
  std::ostringstream s;
  s << fields << " fields x 3 constants, " << entries << " entries, norm-bound violations " << bound_violations
    << ", oracle mismatches " << mismatches;
  return {bound_violations == 0 && mismatches == 0, s.str()};
}

Outcome criterion4() {
  std::size_t runs = 0, dist = 0, steps = 0, cert = 0;
  double worst_ratio = 0;
  for (long d : {7L, 73L, 79L}) {
    auto F = q(d);
    auto units = quadratic_units(F);
    auto cycle = principal_cycle(F);
    auto divisors = sample_divisors(F, 100, 1000 + d);
    for (const char* c : {"11/10", "6/5", "sqrt(2)", "2", "3"}) {
      auto r = verify_reduction(divisors, ReductionConstant::parse(c), units, &cycle);
      runs += r.runs;
      dist += r.distance_violations;
      steps += r.step_violations;
      cert += r.certificate_failures;
      worst_ratio = std::max(worst_ratio, r.max_distance / r.distance_bound);
    }
  }
  std::ostringstream s;
  s << runs << " reductions, distance violations " << dist << ", step violations " << steps
    << ", certificate failures " << cert << ", max distance/bound " << worst_ratio;
  return {runs == 1500 && dist == 0 && steps == 0 && cert == 0, s.str()};
}

struct Prepared {
  SredCensus census;
  UnitLattice units;
  PrincipalCycle cycle;
};

Prepared prepare(long d, const std::string& c) {
  auto F = q(d);
  Prepared p{enumerate_sred(F, ReductionConstant::parse(c)), quadratic_units(F), principal_cycle(F)};
  classify_components(p.census, p.units, &p.cycle);
  cycle_positions(p.census, p.units);
  return p;
}

Outcome criterion5() {
  std::size_t pairs = 0, violations = 0, alt = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (long d : {7L, 73L})
    for (const char* c : {"sqrt(2)", "2"}) {
      auto p = prepare(d, c);
      auto r = verify_separation(p.census, p.units, &p.cycle);
      pairs += r.pairs;
      violations += r.violations;
      alt += r.alt_violations;
      if (r.min_gap) worst = std::min(worst, *r.min_gap - r.delta);
    }
  std::ostringstream s;
  s << pairs << " pairs, violations " << violations << ", min gap - delta " << worst
    << " (3-constant violations, informational: " << alt << ")";
  return {violations == 0 && pairs > 0, s.str()};
}

Outcome criterion6() {
  std::size_t checked = 0, failed = 0, alt_failed = 0;
  std::ostringstream s;
  for (long d : {7L, 73L, 79L})
    for (const char* c : {"sqrt(2)", "2"}) {
      auto p = prepare(d, c);
      auto r = verify_counts(p.census, p.units, &p.cycle);
      ++checked;
      failed += !r.ok();
      alt_failed += !r.alt_ok();
      s << " [d=" << d << " C=" << c << ": #Sred " << r.sred << "<=" << r.sred_bound << ", ball " << r.ball
        << "<=" << r.ball_bound << "]";
    }
  std::ostringstream head;
  head << checked << " cases, violations " << failed << " (3-constant violations, informational: " << alt_failed << ")"
       << s.str();
  return {failed == 0, head.str()};
}

QMatrix to_qmatrix(const std::vector<std::vector<Rat>>& g) {
  QMatrix m(g.size(), g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) m(i, j) = g[i][j];
  return m;
}

Outcome criterion7() {
  std::ostringstream s;
  bool ok = true;
  // SVP oracle.
  std::mt19937_64 rng(7);
  std::size_t svp_bad = 0;
  for (int i = 0; i < 200; ++i) {
    auto g = oracle::random_gram(rng, 2 + i % 2, 8);
    auto G = GramMatrix::from_rational(to_qmatrix(g));
    auto v = G.exact_form(shortest_vector(G).coeffs);
    if (!v || *v != oracle::brute_minimum(g).value) ++svp_bad;
  }
  s << "svp 200 (" << svp_bad << " bad)";
  ok = ok && svp_bad == 0;

  // Covolume identity on 100 divisors across four fields.
  std::size_t cov_bad = 0, cov_n = 0;
  double cov_worst = 0;
  for (auto poly : std::vector<std::vector<Int>>{{-7, 0, 1}, {-73, 0, 1}, {-2, 0, 0, 1}, {1, 1, 1, 1, 1}}) {
    auto F = NumberField::create(poly);
    for (const auto& D : sample_divisors(F, 25, 77)) {
      ++cov_n;
      double e = covolume_check(D).relative_error();
      cov_worst = std::max(cov_worst, e);
      cov_bad += !(e <= 1e-9);
    }
  }
  s << ", covolume " << cov_n << " (" << cov_bad << " bad, worst " << cov_worst << ")";
  ok = ok && cov_bad == 0 && cov_n == 100;

  // LLL jump.
  std::size_t jumps = 0, primitive = 0, jump_bad = 0;
  for (auto poly : std::vector<std::vector<Int>>{{-7, 0, 1}, {-73, 0, 1}, {-79, 0, 1}, {5, 0, 1}, {-2, 0, 0, 1}}) {
    auto F = NumberField::create(poly);
    auto C = ReductionConstant::from_square(lll_jump_constant_squared(F.degree()));
    for (const auto& J : enumerate_integral_ideals(F, Rat(40)))
      for (const auto& I : {J, J.inverse()}) {
        auto jump = lll_jump(I);
        ++jumps;
        if (!jump.primitive) continue;
        ++primitive;
        jump_bad += !is_strongly_c_reduced(jump.J, C);
      }
  }
  s << ", lll-jump " << jumps << " (" << primitive << " primitive, " << jump_bad << " bad)";
  ok = ok && jump_bad == 0;

  // Monotonicity and implications over all census entries.
  std::size_t entries = 0, mono_bad = 0, impl_bad = 0;
  std::vector<ReductionConstant> ladder;
  for (const char* c : {"1", "11/10", "sqrt(2)", "2", "3"}) ladder.push_back(ReductionConstant::parse(c));
  const auto root_n = ReductionConstant::from_square(2);
  for (long d : oracle::real_quadratic_radicands(200))
    for (const auto& c : kCensusC) {
      auto census = enumerate_sred(q(d), ReductionConstant::parse(c));
      for (const auto& e : census.entries) {
        ++entries;
        bool prev = false;
        for (const auto& C : ladder) {
          bool now = is_strongly_c_reduced(e.ideal, C);
          mono_bad += prev && !now;
          prev = now;
        }
        bool usual = is_reduced_usual(e.ideal);
        if (usual != e.usual_reduced) ++impl_bad;
        if (is_strongly_c_reduced(e.ideal, ladder[0]) && !usual) ++impl_bad;
        if (usual && !is_strongly_c_reduced(e.ideal, root_n)) ++impl_bad;
      }
    }
  s << ", census entries " << entries << " (monotonicity " << mono_bad << " bad, implications " << impl_bad << " bad)";
  ok = ok && mono_bad == 0 && impl_bad == 0;
  return {ok, s.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
      {5, criterion5}, {6, criterion6}, {7, criterion7}};
  int failed = 0;
  for (const auto& [id, run] : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
