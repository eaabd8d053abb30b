// qent: entanglement quantities, Feynman-graph census, moments, codes and
// pi_ME minimization behind one executable with JSON output.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qent/codes.hpp"
#include "qent/core.hpp"
#include "qent/entanglement.hpp"
#include "qent/graphs.hpp"
#include "qent/moments.hpp"
#include "qent/optimizer.hpp"
#include "qent/state_io.hpp"
#include "qent/statmech.hpp"

using nlohmann::json;
using namespace qent;

namespace {

constexpr const char* kVersion = "0.1.0";

using Clock = std::chrono::steady_clock;

json make_manifest(const std::string& subcommand, json parameters, Clock::time_point start) {
  const double ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return {{"subcommand", subcommand},
          {"parameters", std::move(parameters)},
          {"version", kVersion},
          {"duration_ms", ms}};
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stoi(tok));
  }
  return out;
}

QuditString parse_string_arg(const std::string& csv, int n, int d) {
  auto digits = parse_int_list(csv);
  if (static_cast<int>(digits.size()) != n)
    throw std::invalid_argument("string argument must have n digits: " + csv);
  return QuditString(d, std::move(digits));
}

Bipartition partition_from_labels(const std::vector<int>& labels_1based, int n) {
  std::vector<int> pos;
  for (int v : labels_1based) pos.push_back(v - 1);
  std::sort(pos.begin(), pos.end());
  return Bipartition(n, std::move(pos));
}

void write_histogram_csv(const std::string& path, const PurityHistogram& h) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "partition,purity\n";
  out.precision(17);
  for (const auto& [labels, p] : h.entries) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (i) out << ';';
      out << labels[i];
    }
    out << ',' << p << '\n';
  }
}

void write_histogram_svg(const std::string& path, const PurityHistogram& h) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  const int width = 640, height = 360, margin = 40;
  std::int64_t max_count = 1;
  for (auto c : h.bin_counts) max_count = std::max(max_count, c);
  const int bins = static_cast<int>(h.bin_counts.size());
  const double bar_w = static_cast<double>(width - 2 * margin) / bins;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  for (int i = 0; i < bins; ++i) {
    const double hgt =
        static_cast<double>(h.bin_counts[i]) / max_count * (height - 2 * margin);
    out << "<rect x=\"" << margin + i * bar_w << "\" y=\"" << height - margin - hgt
        << "\" width=\"" << bar_w * 0.9 << "\" height=\"" << hgt
        << "\" fill=\"steelblue\"/>\n";
  }
  out << "<text x=\"" << margin << "\" y=\"" << height - 10 << "\">" << h.bin_min
      << "</text>\n<text x=\"" << width - margin << "\" y=\"" << height - 10
      << "\" text-anchor=\"end\">" << h.bin_max << "</text>\n</svg>\n";
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entanglement quantities for n-qudit pure states"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  int threads = 0;  // 0 = available parallelism; results are thread-count independent
  app.add_option("--threads", threads, "worker count (0 = auto)");

  // purity
  auto* cmd_purity = app.add_subcommand("purity", "purity of one bipartition");
  std::string state_file, partition_csv;
  cmd_purity->add_option("--state", state_file, "state JSON file")->required();
  cmd_purity->add_option("--partition", partition_csv, "1-based positions of A, e.g. 1,3")
      ->required();

  // pime
  auto* cmd_pime = app.add_subcommand("pime", "potential of multipartite entanglement");
  std::string pime_state, pime_hist_csv, pime_hist_svg;
  int pime_bins = 20;
  cmd_pime->add_option("--state", pime_state, "state JSON file")->required();
  cmd_pime->add_option("--histogram", pime_hist_csv, "write per-bipartition purity CSV");
  cmd_pime->add_option("--svg", pime_hist_svg, "write binned histogram SVG");
  cmd_pime->add_option("--bins", pime_bins, "histogram bin count");

  // delta
  auto* cmd_delta = app.add_subcommand("delta", "coupling function Delta");
  int dn = 0, dd = 0, dna = -1;
  std::string ks, kps, ls, lps;
  cmd_delta->add_option("--n", dn)->required();
  cmd_delta->add_option("--d", dd)->required();
  cmd_delta->add_option("--nA", dna, "subset size (default [n/2])");
  cmd_delta->add_option("--k", ks, "comma-joined digits")->required();
  cmd_delta->add_option("--kp", kps)->required();
  cmd_delta->add_option("--l", ls)->required();
  cmd_delta->add_option("--lp", lps)->required();

  // sample
  auto* cmd_sample = app.add_subcommand("sample", "Haar Monte Carlo estimation");
  int sn = 2, sd = 2, smoment = 1;
  double sbeta = 0.0;
  std::int64_t ssamples = 10000;
  std::uint64_t sseed = 0;
  bool seed_given = false;
  cmd_sample->add_option("--n", sn)->required();
  cmd_sample->add_option("--d", sd)->required();
  cmd_sample->add_option("--beta", sbeta);
  cmd_sample->add_option("--samples", ssamples)->required();
  cmd_sample->add_option("--seed", sseed)->required()->each([&](const std::string&) {
    seed_given = true;
  });
  cmd_sample->add_option("--moment", smoment, "moment order at beta = 0");

  // moments
  auto* cmd_moments = app.add_subcommand("moments", "moments of pi_ME at infinite temperature");
  int mn = 2, md = 2, mm = 1;
  std::string mmode = "exact";
  std::int64_t mc_samples = 100000;
  std::uint64_t mc_seed = 0;
  cmd_moments->add_option("--n", mn)->required();
  cmd_moments->add_option("--d", md)->required();
  cmd_moments->add_option("--m", mm)->required();
  cmd_moments->add_option("--mode", mmode)->check(CLI::IsMember({"exact", "mc", "split"}));
  cmd_moments->add_option("--samples", mc_samples, "mc mode sample count");
  cmd_moments->add_option("--seed", mc_seed, "mc mode seed");

  // graphs census
  auto* cmd_graphs = app.add_subcommand("graphs", "Feynman-graph operations");
  auto* cmd_census = cmd_graphs->add_subcommand("census", "classify S_2m by graph");
  int gm = 2, gn = 2, gd = 2;
  bool geval = false;
  cmd_census->add_option("--m", gm)->required();
  cmd_census->add_flag("--eval", geval, "evaluate brackets per class");
  cmd_census->add_option("--n", gn);
  cmd_census->add_option("--d", gd);

  // code rs
  auto* cmd_code = app.add_subcommand("code", "classical codes over prime fields");
  auto* cmd_rs = cmd_code->add_subcommand("rs", "Reed-Solomon code");
  int cn = 2, cd = 3, ck = 1;
  std::string emit_state;
  cmd_rs->add_option("--n", cn)->required();
  cmd_rs->add_option("--d", cd)->required();
  cmd_rs->add_option("--k", ck)->required();
  cmd_rs->add_option("--emit-state", emit_state, "write the MMES state JSON");

  // optimize
  auto* cmd_opt = app.add_subcommand("optimize", "minimize pi_ME on the unit sphere");
  OptimizerConfig ocfg;
  bool use_anneal = false;
  cmd_opt->add_option("--n", ocfg.n)->required();
  cmd_opt->add_option("--d", ocfg.d)->required();
  cmd_opt->add_option("--restarts", ocfg.restarts);
  cmd_opt->add_option("--seed", ocfg.seed)->required();
  cmd_opt->add_option("--max-iterations", ocfg.max_iterations);
  cmd_opt->add_flag("--anneal", use_anneal, "Metropolis annealing before the polish");
  cmd_opt->add_option("--beta-max", ocfg.beta_max);

  // sigma7
  auto* cmd_sigma7 = app.add_subcommand("sigma7", "the embedded 7-qubit state");
  std::string s7_csv, s7_svg;
  int s7_bins = 20;
  cmd_sigma7->add_option("--histogram", s7_csv, "write per-bipartition purity CSV");
  cmd_sigma7->add_option("--svg", s7_svg, "write binned histogram SVG");
  cmd_sigma7->add_option("--bins", s7_bins, "histogram bin count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  const auto start = Clock::now();
  try {
    if (cmd_purity->parsed()) {
      PureState s = read_state(state_file);
      Bipartition b = partition_from_labels(parse_int_list(partition_csv), s.n);
      json out = {{"purity", purity(s, b)}};
      out["manifest"] = make_manifest(
          "purity", {{"state", state_file}, {"partition", partition_csv}}, start);
      emit(out);
    } else if (cmd_pime->parsed()) {
      PureState s = read_state(pime_state);
      json out = {{"pime", potential_me(s)}};
      if (!pime_hist_csv.empty() || !pime_hist_svg.empty()) {
        auto h = purity_histogram(s, pime_bins);
        if (!pime_hist_csv.empty()) write_histogram_csv(pime_hist_csv, h);
        if (!pime_hist_svg.empty()) write_histogram_svg(pime_hist_svg, h);
      }
      out["manifest"] = make_manifest("pime", {{"state", pime_state}}, start);
      emit(out);
    } else if (cmd_delta->parsed()) {
      CouplingQuery q(parse_string_arg(ks, dn, dd), parse_string_arg(kps, dn, dd),
                      parse_string_arg(ls, dn, dd), parse_string_arg(lps, dn, dd), dna);
      json out = {{"delta", coupling_delta(q)},
                  {"delta_bruteforce", coupling_delta_bruteforce(q)}};
      out["manifest"] = make_manifest(
          "delta",
          {{"n", dn}, {"d", dd}, {"nA", q.n_a}, {"k", ks}, {"kp", kps}, {"l", ls}, {"lp", lps}},
          start);
      emit(out);
    } else if (cmd_sample->parsed()) {
      (void)seed_given;
      EnsembleConfig cfg{sn, sd, sbeta, ssamples, sseed};
      Estimate est = (sbeta == 0.0) ? estimate_moment(cfg, smoment)
                                    : estimate_average_energy(cfg);
      json out = {{"estimate", est.value},
                  {"stderr", est.stderr_},
                  {"samples", est.samples},
                  {"seed", sseed}};
      out["manifest"] = make_manifest("sample",
                                      {{"n", sn},
                                       {"d", sd},
                                       {"beta", sbeta},
                                       {"samples", ssamples},
                                       {"seed", sseed},
                                       {"moment", smoment}},
                                      start);
      emit(out);
    } else if (cmd_moments->parsed()) {
      json out = {{"m", mm}, {"mode", mmode}};
      if (mmode == "exact") {
        out["value"] = exact_moment(mn, md, mm);
      } else if (mmode == "split") {
        auto s = moment_split(mn, md, mm);
        out["value"] = s.total;
        out["cactus"] = s.cactus_part;
        out["noncactus"] = s.noncactus_part;
        out["ratio"] = s.ratio;
      } else {
        EnsembleConfig cfg{mn, md, 0.0, mc_samples, mc_seed};
        auto est = estimate_moment(cfg, mm);
        out["value"] = est.value;
        out["stderr"] = est.stderr_;
        out["samples"] = est.samples;
      }
      out["manifest"] = make_manifest(
          "moments", {{"n", mn}, {"d", md}, {"m", mm}, {"mode", mmode}}, start);
      emit(out);
    } else if (cmd_census->parsed()) {
      auto c = census(gm);
      for (const auto& cls : c.classes) {
        json line = {{"canonical", cls.canonical},
                     {"degeneracy", cls.degeneracy},
                     {"cactus", cls.cactus},
                     {"representative", cls.representative.map}};
        if (geval) line["bracket"] = square_bracket(cls.representative, gn, gd);
        emit(line);
      }
      emit({{"manifest",
             make_manifest("graphs census", {{"m", gm}, {"eval", geval}}, start)}});
    } else if (cmd_rs->parsed()) {
      auto code = reed_solomon(cn, cd, ck);
      json out = code_to_json(code);
      auto rep = singleton_mds_check(code);
      out["delta"] = rep.delta;
      out["singleton_bound"] = rep.bound;
      out["is_mds"] = rep.is_mds;
      if (!emit_state.empty()) {
        write_state(emit_state, mmes_from_code(code));
        out["state_file"] = emit_state;
      }
      out["manifest"] =
          make_manifest("code rs", {{"n", cn}, {"d", cd}, {"k", ck}}, start);
      emit(out);
    } else if (cmd_opt->parsed()) {
      MinimizationResult res = use_anneal ? anneal(ocfg) : minimize_pime(ocfg);
      json out = {{"best_pime", res.best_value},
                  {"restart_values", res.restart_values},
                  {"bipartition_purities", res.bipartition_purities}};
      if (use_anneal) out["acceptance_rate"] = res.acceptance_rate;
      out["state"] = state_to_json(res.best_state);
      out["manifest"] = make_manifest("optimize",
                                      {{"n", ocfg.n},
                                       {"d", ocfg.d},
                                       {"restarts", ocfg.restarts},
                                       {"seed", ocfg.seed},
                                       {"anneal", use_anneal}},
                                      start);
      emit(out);
    } else if (cmd_sigma7->parsed()) {
      PureState s = sigma7_state();
      auto h = purity_histogram(s, s7_bins);
      if (!s7_csv.empty()) write_histogram_csv(s7_csv, h);
      if (!s7_svg.empty()) write_histogram_svg(s7_svg, h);
      json out = {{"pime", potential_me(s)},
                  {"normalization_deviation", s.normalization_deviation},
                  {"bimodal", histogram_bimodal(h)}};
      out["manifest"] = make_manifest("sigma7", json::object(), start);
      emit(out);
    }
  } catch (const std::runtime_error& e) {
    // size guards and I/O failures
    emit({{"error", e.what()}});
    return std::string(e.what()).find("guard") != std::string::npos ? 3 : 2;
  } catch (const std::exception& e) {
    emit({{"error", e.what()}});
    return 2;
  }
  return 0;
}
