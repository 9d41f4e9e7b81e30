// Command-line surface for the rational SFQ engine.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sfq/induction.hpp"
#include "sfq/io.hpp"
#include "sfq/weights.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitParse = 2;
constexpr int kExitInconsistent = 3;
constexpr int kExitVerifyFail = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sfq::ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << data;
}

int cmd_canon(const std::string& file) {
  sfq::io::detail::Lines in(read_file(file));
  const sfq::io::GraphRecord rec = sfq::io::parse_record(in);
  if (rec.zero) {
    std::cout << "ZERO\n";
    return kExitOk;
  }
  const sfq::GraphVector v = sfq::canonicalize(rec.graph);
  if (v.is_zero() || rec.coeff == 0) {
    std::cout << "ZERO\n";
    return kExitOk;
  }
  const auto& [g, sign] = *v.terms.begin();
  std::cout << sfq::io::serialize_record({g, sign * rec.coeff, false});
  return kExitOk;
}

int cmd_unary(const std::string& op, const std::string& file) {
  const sfq::GraphVector v = sfq::io::parse_vector(read_file(file));
  sfq::GraphVector r;
  if (op == "hoch") r = sfq::hoch_differential(v);
  else if (op == "pi") r = sfq::pi_projection(v);
  else if (op == "pike-d") r = sfq::pike_differential(v);
  else if (op == "pike-h") r = sfq::pike_homotopy(v);
  else throw std::logic_error("unknown op");
  std::cout << sfq::io::serialize_vector(r);
  return kExitOk;
}

int cmd_compose(const std::string& outer_file, const std::string& inner_file, int slot,
                const std::string& color) {
  const bool closed = color == "c";
  sfq::GraphVector outer = sfq::io::parse_vector(read_file(outer_file));
  sfq::GraphVector inner =
      sfq::io::parse_vector(read_file(inner_file), closed ? sfq::Color::c : sfq::Color::o);
  std::cout << sfq::io::serialize_vector(
      sfq::compose(outer, slot, closed ? sfq::Color::c : sfq::Color::o, inner));
  return kExitOk;
}

int cmd_run(int nmax, int kmax, const std::string& out_dir) {
  const sfq::InductionResult res = sfq::run_induction(nmax, kmax);
  std::filesystem::create_directories(out_dir);
  write_file(out_dir + "/alpha.tbl", sfq::io::serialize_alpha(res.table));
  std::string report;
  for (const std::string& line : res.log) report += line + "\n";
  report += sfq::io::render_verify(res.verify);
  write_file(out_dir + "/report.txt", report);
  int pass = 0, unchecked = 0;
  for (const auto& it : res.verify) {
    if (it.verdict == sfq::Verdict::Pass) ++pass;
    if (it.verdict == sfq::Verdict::Unchecked) ++unchecked;
    if (it.verdict == sfq::Verdict::Fail) {
      std::cerr << "MC FAIL at " << it.corolla.str() << "\n";
      return kExitVerifyFail;
    }
  }
  std::cout << "wrote " << out_dir << "/alpha.tbl (" << res.table.entries().size()
            << " entries); mc_verify " << pass << " PASS, " << unchecked << " UNCHECKED\n";
  return kExitOk;
}

int cmd_verify(const std::string& file) {
  const sfq::AlphaTable a = sfq::io::parse_alpha(read_file(file));
  bool fail = false;
  // boundary conditions for any explicitly stored row-1 entries
  for (const auto& [nk, v] : a.entries()) {
    if (nk.first != 1) continue;
    sfq::GraphVector want = sfq::broom(nk.second);
    want *= sfq::Rat(1) / sfq::rat_factorial(nk.second);
    const bool ok = v == want;
    std::cout << "boundary o:1," << nk.second << (ok ? " PASS" : " FAIL") << "\n";
    fail = fail || !ok;
  }
  const auto items = sfq::mc_verify(a);
  std::cout << sfq::io::render_verify(items);
  for (const auto& it : items) fail = fail || it.verdict == sfq::Verdict::Fail;
  return fail ? kExitVerifyFail : kExitOk;
}

int cmd_weight(const std::string& file, long long samples, std::uint64_t seed) {
  sfq::io::detail::Lines in(read_file(file));
  const sfq::io::GraphRecord rec = sfq::io::parse_record(in);
  const sfq::WeightEstimate est = sfq::estimate_weight(rec.graph, samples, seed);
  std::cout.precision(12);
  std::cout << "mean " << est.mean << "\n"
            << "stderr " << est.stderr_ << "\n"
            << "samples " << est.samples << "\n"
            << "seed " << est.seed << "\n"
            << "exact " << (est.exact ? 1 : 0) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic engine for stable formality quasi-isomorphisms"};
  app.require_subcommand(1);

  std::string file, inner_file, out_dir = ".", color = "c";
  int nmax = 2, kmax = 0, slot = 1;
  long long samples = 100000;
  std::uint64_t seed = 1;

  auto* canon = app.add_subcommand("canon", "canonical form of a graph record");
  canon->add_option("file", file)->required();

  auto* compose = app.add_subcommand("compose", "operadic insertion outer o_(slot,color) inner");
  compose->add_option("outer", file)->required();
  compose->add_option("inner", inner_file)->required();
  compose->add_option("--slot", slot)->required();
  compose->add_option("--color", color)->required()->check(CLI::IsMember({"c", "o"}));

  for (const char* op : {"hoch", "pi", "pike-d", "pike-h"}) {
    auto* sub = app.add_subcommand(op, std::string("apply ") + op + " to a vector file");
    sub->add_option("file", file)->required();
  }

  auto* run = app.add_subcommand("run", "construct a rational SFQ table");
  run->add_option("--nmax", nmax)->required()->check(CLI::Range(2, 64));
  run->add_option("--kmax", kmax)->required()->check(CLI::Range(0, 64));
  run->add_option("--out", out_dir);
  run->add_option("--seed", seed);  // accepted for config parity; run is exact

  auto* verify = app.add_subcommand("verify", "MC and boundary checks for a table file");
  verify->add_option("file", file)->required();

  auto* weight = app.add_subcommand("weight", "Monte-Carlo weight of one graph");
  weight->add_option("file", file)->required();
  weight->add_option("--samples", samples);
  weight->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (canon->parsed()) return cmd_canon(file);
    if (compose->parsed()) return cmd_compose(file, inner_file, slot, color);
    for (const char* op : {"hoch", "pi", "pike-d", "pike-h"})
      if (app.get_subcommand(op)->parsed()) return cmd_unary(op, file);
    if (run->parsed()) return cmd_run(nmax, kmax, out_dir);
    if (verify->parsed()) return cmd_verify(file);
    if (weight->parsed()) return cmd_weight(file, samples, seed);
  } catch (const sfq::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const sfq::InconsistentError& e) {
    std::cerr << e.what() << "\n";
    return kExitInconsistent;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
