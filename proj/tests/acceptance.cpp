// One line per acceptance criterion; exit status 0 iff all pass.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rrsurf/verify.hpp"

using namespace rrsurf;

namespace {

struct Outcome {
  bool pass = true;
  std::size_t checks = 0;
  std::string detail;
};

const std::vector<int> kSmallQ{2, 3, 5};

RunConfig config(Model m, int q, std::vector<std::pair<int, int>> range, std::vector<std::string> suites) {
  RunConfig c;
  c.model = m;
  c.q = q;
  c.range = std::move(range);
  c.suites = std::move(suites);
  return c;
}

void absorb(Outcome& o, const Report& rep) {
  o.checks += rep.checks().size();
  if (const Check* c = rep.first_failure()) {
    if (o.pass) o.detail = check_text(*c);
    o.pass = false;
  }
}

Outcome suite_everywhere(const std::string& suite, int p2, int p1, const std::vector<int>& qs) {
  Outcome o;
  for (const int q : qs) {
    absorb(o, run_verify(config(Model::P2, q, {{-p2, p2}}, {suite})));
    absorb(o, run_verify(config(Model::P1xP1, q, {{-p1, p1}}, {suite})));
  }
  return o;
}

Outcome riemann_roch() {
  Outcome o = suite_everywhere("rr", 6, 4, kSmallQ);
  const Surface P2 = surface_make(Model::P2, 3), Q = surface_make(Model::P1xP1, 3);
  const RRReport line = rr_assemble(P2, class_representative(P2, {{1}}), canonical_divisor(P2));
  const RRReport fiber = rr_assemble(Q, class_representative(Q, {{1, 0}}), canonical_divisor(Q));
  o.checks += 2;
  if (!(line.pass && line.lhs2 == 6 && line.rhs2 == 6 && fiber.pass && fiber.lhs2 == 4 && fiber.rhs2 == 4)) {
    if (o.pass) o.detail = "spot values: line " + std::to_string(line.lhs2) + "/2 vs " + std::to_string(line.rhs2) +
                           "/2, (1,0) " + std::to_string(fiber.lhs2) + "/2 vs " + std::to_string(fiber.rhs2) + "/2";
    o.pass = false;
  }
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path();
  const std::string a = (dir / "rrsurf_acceptance_a.json").string(), b = (dir / "rrsurf_acceptance_b.json").string();
  for (const std::string args : {"--surface P2 --q 3 --range -2:2 --seed 11 verify", "--surface P1xP1 --q 5 --range -1:1 --seed 11 verify"}) {
    const std::string base = std::string(RRSURF_CLI_PATH) + " " + args + " --json ";
    const int ra = std::system((base + a + " > /dev/null").c_str());
    const int rb = std::system((base + b + " > /dev/null").c_str());
    const std::string ja = slurp(a), jb = slurp(b);
    ++o.checks;
    if (ra != 0 || rb != 0 || ja.empty() || ja != jb) {
      o.pass = false;
      o.detail = "'" + args + "' exit " + std::to_string(WEXITSTATUS(ra)) + "/" + std::to_string(WEXITSTATUS(rb)) +
                 (ja == jb ? ", identical bytes" : ", bytes differ");
    }
  }
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  return o;
}

struct Criterion {
  int id;
  std::string text;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "reciprocity around points and along curves, 25 forms per surface, q in {2,3,5}", 30,
       [] { return suite_everywhere("reciprocity", 0, 0, kSmallQ); }},
      {2, "intersection numbers via symbols equal the resultant oracle, q in {2,3,5}", 30,
       [] { return suite_everywhere("bezout", 0, 0, kSmallQ); }},
      {3, "Serre difference identity on [-6,6] (P2) and [-4,4]^2 (P1xP1)", 10,
       [] { return suite_everywhere("serre", 6, 4, kSmallQ); }},
      {4, "chi(S) = chi(w - S) on the same ranges", 5, [] { return suite_everywhere("chi", 6, 4, kSmallQ); }},
      {5, "commutator q-exponents agree, classes -3..3 (P2) and [-2,2]^2 (P1xP1)", 60,
       [] { return suite_everywhere("commutator", 3, 2, kSmallQ); }},
      {6, "Riemann-Roch assembled on the full ranges, spot values 3 = 3 and 2 = 2", 60, [] { return riemann_roch(); }},
      {7, "window gram rank, annihilators and lattice quotient dimensions, q in {2,3,5}", 60,
       [] { return suite_everywhere("windows", 0, 0, kSmallQ); }},
      {8, "closed-form h-vectors equal Cech monomial counts on the full ranges", 5,
       [] { return suite_everywhere("oracles", 6, 4, {2}); }},
      {9, "identical config and seed give byte-identical JSON reports", 120, [] { return determinism(); }},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass && secs > c.budget_s) {
      o.pass = false;
      o.detail = "over the " + std::to_string(static_cast<int>(c.budget_s)) + " s budget";
    }
    all = all && o.pass;
    char t[32];
    std::snprintf(t, sizeof t, "%.2fs", secs);
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.text << " (" << o.checks << " checks, "
              << t << ")";
    if (!o.pass) std::cout << "\n  first counterexample: " << o.detail;
    std::cout << std::endl;
  }
  return all ? 0 : 1;
}
