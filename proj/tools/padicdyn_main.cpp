// padicdyn: dynamical decomposition of x -> x^2 on the p-adic integers.
//
// Exit codes: 0 success, 1 failed check / bad request, 2 invalid prime,
// 3 resource bound exceeded.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <gmpxx.h>

#include "padicdyn/decomposition.hpp"
#include "padicdyn/errors.hpp"
#include "padicdyn/level_graph.hpp"
#include "padicdyn/lift_engine.hpp"
#include "padicdyn/numtheory.hpp"
#include "padicdyn/padic.hpp"
#include "padicdyn/report_io.hpp"

namespace {

using std::uint64_t;

int write_output(const std::string& path, const std::string& data) {
  if (path.empty()) {
    std::cout << data;
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return 1;
  }
  f << data;
  return f.good() ? 0 : 1;
}

int require_prime(uint64_t p) {
  if (padicdyn::is_prime(p)) return 0;
  std::cerr << "error: " << p << " is not prime\n";
  return 2;
}

std::string an_bn_row(const padicdyn::CycleAtLevel& c) {
  const padicdyn::AnBn ab = padicdyn::an_bn(c);
  std::string row = "rep=" + c.rep.get_str() + " len=" + std::to_string(c.length) +
                    " a=" + std::to_string(ab.a) + " b=";
  row += ab.b ? std::to_string(*ab.b) : "-";
  row += " class=" + padicdyn::classify(c).str();
  return row;
}

unsigned digits_base_p(const mpz_class& v, uint64_t p) {
  unsigned d = 1;
  for (mpz_class t = v / static_cast<unsigned long>(p); t != 0;
       t /= static_cast<unsigned long>(p))
    ++d;
  return d;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamical decomposition of x -> x^2 on the p-adic integers"};
  app.require_subcommand(1);

  uint64_t max_nodes = padicdyn::kDefaultNodeBound;
  double max_seconds = 0.0;
  app.add_option("--max-nodes", max_nodes,
                 "bound on graph nodes / lift-fiber work")
      ->envname("PADICDYN_MAX_NODES");
  app.add_option("--max-seconds", max_seconds,
                 "soft deadline, checked between levels (verify); 0 = off")
      ->envname("PADICDYN_MAX_SECONDS");

  struct {
    uint64_t p = 0;
    unsigned depth = padicdyn::kDefaultDepth;
    unsigned precision = 0;
    std::string format = "text";
    std::string out;
  } dec;
  auto* cmd_dec = app.add_subcommand("decompose", "full P | M | B report");
  cmd_dec->add_option("-p,--prime", dec.p, "prime modulus")->required();
  cmd_dec->add_option("-d,--depth", dec.depth, "largest sphere index");
  cmd_dec->add_option("-N,--precision", dec.precision,
                      "working precision, digits base p (0 = depth + s + 4)");
  cmd_dec->add_option("-f,--format", dec.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd_dec->add_option("-o,--output", dec.out, "write to file instead of stdout");

  struct {
    uint64_t p = 0;
    unsigned level = 1;
    std::string dot;
    bool units_only = false;
  } gra;
  auto* cmd_gra = app.add_subcommand("graph", "DOT export of f_n on Z/p^n");
  cmd_gra->add_option("-p,--prime", gra.p, "prime modulus")->required();
  cmd_gra->add_option("-n,--level", gra.level, "level n")->required();
  cmd_gra->add_option("--dot", gra.dot, "write DOT to file instead of stdout");
  cmd_gra->add_flag("--units-only", gra.units_only, "drop 0 and its fiber");

  struct {
    uint64_t p = 0;
    unsigned level = 1;
    bool all = false;
    std::string cycle;
  } cls;
  auto* cmd_cls = app.add_subcommand(
      "classify", "lift behavior (a_n, b_n) of cycles at one level");
  cmd_cls->add_option("-p,--prime", cls.p, "prime modulus")->required();
  cmd_cls->add_option("-n,--level", cls.level, "level n")->required();
  auto* opt_all = cmd_cls->add_flag("--all", cls.all, "every cycle of f_n");
  cmd_cls->add_option("--cycle", cls.cycle, "a periodic residue of f_n")
      ->excludes(opt_all);

  struct {
    uint64_t p = 0;
    unsigned max_level = 3;
  } ver;
  auto* cmd_ver = app.add_subcommand(
      "verify", "cross-check predictions against the brute-force oracle");
  cmd_ver->add_option("-p,--prime", ver.p, "odd prime")->required();
  cmd_ver->add_option("-n,--max-level", ver.max_level, "deepest level");

  struct {
    uint64_t limit = 4000;
  } wie;
  auto* cmd_wie =
      app.add_subcommand("wieferich", "primes with v_p(2^(p-1) - 1) >= 2");
  cmd_wie->add_option("-l,--limit", wie.limit, "scan odd primes below this");

  struct {
    uint64_t p = 0;
    std::string value;
    unsigned precision = 0;
  } loc;
  auto* cmd_loc =
      app.add_subcommand("locate", "place a point in the decomposition");
  cmd_loc->add_option("-p,--prime", loc.p, "prime modulus")->required();
  cmd_loc->add_option("-x,--value", loc.value, "point, decimal")->required();
  cmd_loc->add_option("-N,--precision", loc.precision,
                      "digits base p (0 = enough for the value, floor 8)");

  CLI11_PARSE(app, argc, argv);

  const auto t0 = std::chrono::steady_clock::now();
  auto within_deadline = [&](unsigned) {
    if (max_seconds <= 0) return true;
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    return dt.count() < max_seconds;
  };

  try {
    if (cmd_dec->parsed()) {
      if (int rc = require_prime(dec.p)) return rc;
      const auto report = padicdyn::decompose(dec.p, dec.depth, dec.precision);
      return write_output(dec.out, dec.format == "json"
                                       ? padicdyn::report_to_json(report)
                                       : padicdyn::report_to_text(report));
    }

    if (cmd_gra->parsed()) {
      if (int rc = require_prime(gra.p)) return rc;
      const auto g = padicdyn::build_graph(gra.p, gra.level, max_nodes);
      return write_output(gra.dot, padicdyn::export_dot(g, gra.units_only));
    }

    if (cmd_cls->parsed()) {
      if (int rc = require_prime(cls.p)) return rc;
      if (!cls.all && cls.cycle.empty()) {
        std::cerr << "error: classify needs --all or --cycle REP\n";
        return 1;
      }
      std::string out;
      if (cls.all) {
        const auto g = padicdyn::build_graph(cls.p, cls.level, max_nodes);
        for (const auto& c : padicdyn::cycles_at_level(g))
          out += an_bn_row(c) + "\n";
      } else {
        const mpz_class rep(cls.cycle, 10);
        const auto c =
            padicdyn::find_cycle_through(cls.p, cls.level, rep, max_nodes);
        if (!c) {
          std::cerr << "error: " << cls.cycle << " is not periodic at level "
                    << cls.level << "\n";
          return 1;
        }
        out = an_bn_row(*c) + "\n";
      }
      return write_output("", out);
    }

    if (cmd_ver->parsed()) {
      if (int rc = require_prime(ver.p)) return rc;
      const auto report = padicdyn::verify_decomposition(
          ver.p, ver.max_level, max_nodes, within_deadline);
      std::cout << report.str();
      return report.ok ? 0 : 1;
    }

    if (cmd_wie->parsed()) {
      std::string out;
      for (uint64_t p = 3; p < wie.limit; p += 2) {
        if (!padicdyn::is_prime(p)) continue;
        const auto w = padicdyn::wieferich_valuation(p);
        if (w.s >= 2)
          out += std::to_string(p) + " " + std::to_string(w.s) + "\n";
      }
      return write_output("", out);
    }

    if (cmd_loc->parsed()) {
      if (int rc = require_prime(loc.p)) return rc;
      const mpz_class v(loc.value, 10);
      unsigned N = loc.precision;
      if (N == 0) {
        const unsigned s =
            loc.p == 2 ? 0 : padicdyn::wieferich_valuation(loc.p).s;
        N = std::max(8u, digits_base_p(v, loc.p) + s + 2);
      }
      const padicdyn::PadicInt x(loc.p, N, v);
      std::cout << padicdyn::locate(x).str() << "\n";
      return 0;
    }
  } catch (const padicdyn::resource_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid argument: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
