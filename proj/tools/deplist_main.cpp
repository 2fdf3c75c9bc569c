// deplist: experiment harness for self-adjusting lists with precedence
// constraints. Subcommands: run, opt, verify, gen, pkt, ratio.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "deplist/algorithms.hpp"
#include "deplist/offline_opt.hpp"
#include "deplist/pktclass.hpp"
#include "deplist/trace.hpp"
#include "deplist/verify.hpp"
#include "deplist/workloads.hpp"

namespace {

using namespace deplist;

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::bad_spec, "cannot open output file '" + path + "'");
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::bad_spec, "cannot open input file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string format_mean(long long sum, long long count) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", static_cast<double>(sum) / static_cast<double>(count));
  return buf;
}

std::string render_request(const Trace& trace, const Request& r) {
  switch (r.kind) {
    case RequestKind::Access:
      return "access:" + trace.name_of(r.node);
    case RequestKind::Insert:
      return "insert:" + trace.name_of(r.node);
    case RequestKind::Delete:
      return "delete:" + trace.name_of(r.node);
  }
  return "?";
}

std::string render_config(const Trace& trace, const ListState& list) {
  std::string out;
  for (int p = 1; p <= list.size(); ++p) {
    if (p > 1) out += ';';
    out += trace.name_of(list.at(p));
  }
  return out;
}

std::unique_ptr<EngineBase> make_engine(const std::string& alg, const Trace& trace,
                                        std::uint64_t seed) {
  if (alg == "det") return std::make_unique<DetList>(trace.dag, trace.initial);
  if (alg == "static") return std::make_unique<StaticList>(trace.dag, trace.initial);
  if (alg == "rand") {
    auto rand = RandList::seeded(trace.dag, trace.initial, seed);
    return std::make_unique<RandList>(std::move(rand));
  }
  fail(Errc::bad_spec, "unknown algorithm '" + alg + "'");
}

int cmd_run(const std::string& trace_path, const std::string& alg, std::uint64_t seed, int trials,
            bool with_opt, const std::string& out_path) {
  if (trials <= 0) fail(Errc::bad_spec, "trials must be positive");
  Trace trace = read_trace_file(trace_path);
  std::optional<OptTrace> opt;
  if (with_opt) opt = opt_cost(trace.dag, trace.initial, trace.requests);

  std::ostringstream csv;
  if (alg == "rand" && trials > 1) {
    csv << "t,request,access_mean,access_min,access_max,rearr_mean,rearr_min,rearr_max,"
           "cum_total_mean\n";
    const std::size_t steps = trace.requests.size();
    std::vector<long long> access_sum(steps, 0), access_min(steps, 0), access_max(steps, 0);
    std::vector<long long> rearr_sum(steps, 0), rearr_min(steps, 0), rearr_max(steps, 0);
    std::vector<long long> cum_sum(steps, 0);
    long long total_sum = 0, total_min = 0, total_max = 0;
    for (int trial = 0; trial < trials; ++trial) {
      RandList rand = RandList::seeded(trace.dag, trace.initial, seed + trial);
      long long cum = 0;
      for (std::size_t t = 0; t < steps; ++t) {
        EventRecord rec = rand.serve(trace.requests[t]);
        cum += rec.total();
        access_sum[t] += rec.access_cost;
        rearr_sum[t] += rec.rearrangement_cost;
        cum_sum[t] += cum;
        if (trial == 0 || rec.access_cost < access_min[t]) access_min[t] = rec.access_cost;
        if (trial == 0 || rec.access_cost > access_max[t]) access_max[t] = rec.access_cost;
        if (trial == 0 || rec.rearrangement_cost < rearr_min[t]) rearr_min[t] = rec.rearrangement_cost;
        if (trial == 0 || rec.rearrangement_cost > rearr_max[t]) rearr_max[t] = rec.rearrangement_cost;
      }
      long long total = rand.ledger().total();
      total_sum += total;
      if (trial == 0 || total < total_min) total_min = total;
      if (trial == 0 || total > total_max) total_max = total;
    }
    for (std::size_t t = 0; t < steps; ++t) {
      csv << (t + 1) << ',' << render_request(trace, trace.requests[t]) << ','
          << format_mean(access_sum[t], trials) << ',' << access_min[t] << ',' << access_max[t]
          << ',' << format_mean(rearr_sum[t], trials) << ',' << rearr_min[t] << ',' << rearr_max[t]
          << ',' << format_mean(cum_sum[t], trials) << '\n';
    }
    csv << "# trials=" << trials << " mean_total=" << format_mean(total_sum, trials)
        << " min_total=" << total_min << " max_total=" << total_max << '\n';
    if (opt) csv << "# opt_total=" << opt->total_cost << '\n';
  } else {
    std::unique_ptr<EngineBase> det_like;
    std::unique_ptr<MtfReference> mtf;
    std::unique_ptr<BitReference> bit;
    if (alg == "mtf") {
      mtf = std::make_unique<MtfReference>(trace.dag, trace.initial);
    } else if (alg == "bit") {
      Rng rng(seed);
      BitAssignment bits;
      for (NodeId id : trace.initial.order()) bits.set(id, rng.bit());
      bit = std::make_unique<BitReference>(trace.dag, trace.initial, bits,
                                           seed ^ 0x9e3779b97f4a7c15ull);
    } else {
      det_like = make_engine(alg, trace, seed);
    }
    const bool typed_potential = alg == "rand" || alg == "bit";

    csv << "t,request,access_cost,rearrangement_cost,list_length,inversions_vs_opt,"
           "potential_half,cum_access,cum_rearrange,cum_total\n";
    long long cum_access = 0, cum_rearr = 0;
    for (std::size_t t = 0; t < trace.requests.size(); ++t) {
      EventRecord rec = det_like   ? det_like->serve(trace.requests[t])
                        : mtf      ? mtf->serve(trace.requests[t])
                                   : bit->serve(trace.requests[t]);
      cum_access += rec.access_cost;
      cum_rearr += rec.rearrangement_cost;
      std::string inv_col, phi_col;
      if (opt) {
        const ListState& ref = opt->per_step[t].after;
        inv_col = std::to_string(inversions(rec.list_after, ref).total);
        if (typed_potential) {
          const BitAssignment& bits =
              det_like ? static_cast<RandList*>(det_like.get())->bits() : bit->bits();
          phi_col = std::to_string(potential_rand_half(rec.list_after, ref, bits));
        } else {
          phi_col = std::to_string(potential_det_half(rec.list_after, ref));
        }
      }
      csv << (t + 1) << ',' << render_request(trace, trace.requests[t]) << ',' << rec.access_cost
          << ',' << rec.rearrangement_cost << ',' << rec.list_after.size() << ',' << inv_col << ','
          << phi_col << ',' << cum_access << ',' << cum_rearr << ',' << (cum_access + cum_rearr)
          << '\n';
    }
    csv << "# total_access=" << cum_access << " total_rearrangement=" << cum_rearr
        << " total=" << (cum_access + cum_rearr) << '\n';
    if (opt) csv << "# opt_total=" << opt->total_cost << '\n';
  }
  write_output(out_path, csv.str());
  return 0;
}

int cmd_opt(const std::string& trace_path, int limit, const std::string& out_path) {
  Trace trace = read_trace_file(trace_path);
  OptTrace opt = opt_cost(trace.dag, trace.initial, trace.requests, limit);
  std::ostringstream csv;
  csv << "t,request,transposition_cost,service_cost,config\n";
  for (std::size_t t = 0; t < opt.per_step.size(); ++t) {
    const OptStep& step = opt.per_step[t];
    csv << (t + 1) << ',' << render_request(trace, trace.requests[t]) << ','
        << step.transposition_cost << ',' << step.service_cost << ','
        << render_config(trace, step.after) << '\n';
  }
  csv << "# total=" << opt.total_cost << '\n';
  write_output(out_path, csv.str());
  return 0;
}

int cmd_gen(const std::string& kind, WorkloadSpec spec, const std::string& out_path) {
  Trace trace;
  if (kind == "quadratic-insert") {
    QuadraticInsertInstance inst = gen_quadratic_insert_instance(spec.n);
    trace.names = inst.names;
    trace.dag = inst.initial_dag;
    trace.initial = inst.initial;
    trace.requests = {inst.insert};
  } else {
    if (kind == "empty") spec.dag_kind = DagKind::Empty;
    else if (kind == "chain") spec.dag_kind = DagKind::Chain;
    else if (kind == "layered") spec.dag_kind = DagKind::Layered;
    else if (kind == "random") spec.dag_kind = DagKind::Random;
    else if (kind == "transitive-random") spec.dag_kind = DagKind::TransitiveRandom;
    else fail(Errc::bad_spec, "unknown workload kind '" + kind + "'");
    WorkloadInstance inst = gen_sequence(spec);
    trace.names = inst.names;
    trace.dag = inst.dag;
    trace.initial = inst.initial;
    trace.requests = inst.requests;
  }
  write_output(out_path, serialize_trace(trace));
  return 0;
}

std::string report_csv(const std::vector<CheckReport>& reports) {
  std::ostringstream out;
  out << "check,instances,violations,worst_slack,witness\n";
  for (const CheckReport& r : reports) {
    std::string witness = r.witness;
    for (char& c : witness)
      if (c == ',' || c == '\n') c = ';';
    out << r.name << ',' << r.instances << ',' << r.violations << ','
        << (r.worst_slack ? rat_to_string(*r.worst_slack) : "") << ',' << witness << '\n';
  }
  return out.str();
}

std::string report_jsonl(const std::vector<CheckReport>& reports) {
  std::ostringstream out;
  for (const CheckReport& r : reports) {
    nlohmann::json j;
    j["check"] = r.name;
    j["instances"] = r.instances;
    j["violations"] = r.violations;
    if (r.worst_slack)
      j["worst_slack"] = rat_to_string(*r.worst_slack);
    else
      j["worst_slack"] = nullptr;
    if (r.witness.empty())
      j["witness"] = nullptr;
    else
      j["witness"] = r.witness;
    out << j.dump() << '\n';
  }
  return out.str();
}

std::string report_text(const std::vector<CheckReport>& reports) {
  std::ostringstream out;
  for (const CheckReport& r : reports) out << r.summary() << '\n';
  return out.str();
}

int cmd_verify(const std::string& suite, long long trials, std::uint64_t seed, int max_n,
               int sequences, int length, const std::string& format,
               const std::string& out_path) {
  std::vector<CheckReport> reports;
  EventSweepSpec events{trials, seed, 2, max_n, 0.35};
  CompetitiveSweepSpec comp;
  comp.sequences_per_dag = sequences;
  comp.length = length;
  comp.seed = seed;
  InsertDeleteSweepSpec updates;
  updates.sequences_per_universe = std::max(1, sequences / 8);
  updates.seed = seed;

  auto want = [&](const std::string& name) { return suite == name || suite == "all"; };
  if (want("set-relations")) reports.push_back(check_set_relations(events));
  if (want("inversion-change")) reports.push_back(check_inversion_change(events));
  if (want("rearrangement-bound")) reports.push_back(check_rearrangement_bound(events));
  if (want("det-amortized") || want("rand-competitive")) {
    CompetitiveSweepSpec one = comp;
    one.det_side = want("det-amortized");
    one.rand_side = want("rand-competitive");
    CompetitiveSweepReport r = sweep_competitive(one);
    if (one.det_side) {
      reports.push_back(r.det_amortized);
      reports.push_back(r.det_ratio);
    }
    if (one.rand_side) {
      reports.push_back(r.rand_ratio);
      reports.push_back(r.rand_event);
    }
    reports.push_back(r.opt_lower);
  }
  if (want("rand-expectation"))
    reports.push_back(sweep_rand_expectation(std::min<long long>(trials, 1000), seed, max_n));
  if (want("reduction")) reports.push_back(sweep_reduction_equivalence(1000, seed));
  if (want("distance-oracle")) reports.push_back(sweep_distance_oracle(50, seed));
  if (want("insert-delete")) {
    InsertDeleteReport r = sweep_insert_delete(updates);
    reports.push_back(r.det_ratio);
    reports.push_back(r.rand_ratio);
    reports.push_back(r.zero_swap_inserts);
  }
  if (want("quadratic-insert")) reports.push_back(check_quadratic_insert());
  if (want("rule-table")) reports.push_back(check_rule_table_extraction());
  if (want("bit-uniformity")) reports.push_back(check_bit_uniformity(4, 12, 0.15, seed));
  if (reports.empty()) fail(Errc::bad_spec, "unknown verify suite '" + suite + "'");

  std::string rendered = format == "csv"     ? report_csv(reports)
                         : format == "jsonl" ? report_jsonl(reports)
                                             : report_text(reports);
  write_output(out_path, rendered);
  for (const CheckReport& r : reports)
    if (!r.ok()) return 1;
  return 0;
}

int cmd_ratio(const std::string& trace_path, const std::string& alg, bool exact, int trials,
              std::uint64_t seed, const std::string& out_path) {
  Trace trace = read_trace_file(trace_path);
  std::ostringstream out;
  OptTrace opt = opt_cost(trace.dag, trace.initial, trace.requests);
  if (alg == "det") {
    DetList det(trace.dag, trace.initial);
    for (const Request& r : trace.requests) det.serve(r);
    Rat ratio(det.ledger().total(), opt.total_cost);
    out << "algorithm=det alg_total=" << det.ledger().total() << " opt_total=" << opt.total_cost
        << " ratio=" << rat_to_string(ratio) << " exact=yes\n";
  } else if (alg == "rand") {
    if (exact) {
      Rat ratio = competitive_ratio_rand_exact(trace.dag, trace.initial, trace.requests);
      out << "algorithm=rand opt_total=" << opt.total_cost << " ratio=" << rat_to_string(ratio)
          << " exact=yes\n";
    } else {
      double ratio =
          competitive_ratio_rand_mc(trace.dag, trace.initial, trace.requests, trials, seed);
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.6f", ratio);
      out << "algorithm=rand opt_total=" << opt.total_cost << " ratio=" << buf
          << " exact=no trials=" << trials << '\n';
    }
  } else {
    fail(Errc::bad_spec, "ratio supports det and rand");
  }
  write_output(out_path, out.str());
  return 0;
}

int cmd_pkt_extract(const std::string& rules_path, bool strict, const std::string& out_path) {
  RuleTable table = parse_rules(read_file(rules_path));
  DependencyDag dag = extract_dependencies(table, strict);
  Trace trace;
  for (const Rule& r : table.rules) trace.names.push_back(r.label);
  trace.dag = dag;
  std::vector<NodeId> priority(table.rules.size());
  for (std::size_t i = 0; i < priority.size(); ++i) priority[i] = static_cast<NodeId>(i);
  trace.initial = ListState(priority);
  write_output(out_path, serialize_trace(trace));
  return 0;
}

int cmd_pkt_classify(const std::string& rules_path, const std::string& packets_path,
                     const std::string& alg, bool strict, std::uint64_t seed,
                     const std::string& out_path) {
  RuleTable table = parse_rules(read_file(rules_path));
  std::vector<Packet> packets = parse_packets(read_file(packets_path));
  DependencyDag dag = extract_dependencies(table, strict);
  std::vector<NodeId> priority(table.rules.size());
  for (std::size_t i = 0; i < priority.size(); ++i) priority[i] = static_cast<NodeId>(i);
  ListState initial(priority);

  std::unique_ptr<EngineBase> engine;
  if (alg == "det")
    engine = std::make_unique<DetList>(dag, initial);
  else if (alg == "static")
    engine = std::make_unique<StaticList>(dag, initial);
  else
    fail(Errc::bad_spec, "pkt classify supports det and static");
  (void)seed;

  std::ostringstream csv;
  csv << "packet,rule,action,cost\n";
  long long total_cost = 0, matches = 0, misses = 0;
  for (const Packet& p : packets) {
    std::optional<ClassifyResult> result = classify(p, engine->list(), table);
    std::ostringstream pkt;
    pkt << p.proto << ' ' << Ipv4Prefix{p.src_ip, 32}.to_string() << ':' << p.src_port << "->"
        << Ipv4Prefix{p.dst_ip, 32}.to_string() << ':' << p.dst_port;
    if (!result) {
      ++misses;
      csv << pkt.str() << ",,NOMATCH,\n";
      continue;
    }
    ++matches;
    total_cost += result->cost;
    csv << pkt.str() << ',' << result->label << ','
        << (result->action == RuleAction::Accept ? "ACCEPT" : "DENY") << ',' << result->cost
        << '\n';
    engine->serve(Request::access(result->rule_index));
  }
  csv << "# packets=" << packets.size() << " matched=" << matches << " unmatched=" << misses
      << " total_cost=" << total_cost << '\n';
  write_output(out_path, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-adjusting list access with precedence constraints"};
  app.require_subcommand(1);

  std::string trace_path, out_path, alg = "det", format = "text", suite, kind = "random";
  std::string rules_path, packets_path;
  std::uint64_t seed = 1;
  int trials = 1;
  long long verify_trials = 10000;
  int limit = kDefaultConfigNodeLimit;
  int max_n = 8, sequences = 200, length = 8;
  bool with_opt = false, exact = false, strict = false;

  auto* run = app.add_subcommand("run", "replay a trace and emit per-event costs");
  run->add_option("--trace", trace_path)->required();
  run->add_option("--alg", alg)->check(CLI::IsMember({"det", "rand", "static", "mtf", "bit"}));
  run->add_option("--seed", seed);
  run->add_option("--trials", trials);
  run->add_flag("--opt", with_opt, "also compute the offline optimum columns");
  run->add_option("--out", out_path);

  auto* opt_cmd = app.add_subcommand("opt", "brute-force offline optimum of a trace");
  opt_cmd->add_option("--trace", trace_path)->required();
  opt_cmd->add_option("--limit", limit, "node-count cap for the configuration space");
  opt_cmd->add_option("--out", out_path);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite)->required();
  verify->add_option("--trials", verify_trials);
  verify->add_option("--seed", seed);
  verify->add_option("--max-n", max_n);
  verify->add_option("--sequences", sequences);
  verify->add_option("--length", length);
  verify->add_option("--format", format)->check(CLI::IsMember({"text", "csv", "jsonl"}));
  verify->add_option("--out", out_path);

  auto* gen = app.add_subcommand("gen", "generate a workload trace");
  WorkloadSpec spec;
  gen->add_option("--kind", kind,
                  "empty|chain|layered|random|transitive-random|quadratic-insert");
  gen->add_option("--n", spec.n);
  gen->add_option("--width", spec.width);
  gen->add_option("--depth", spec.depth);
  gen->add_option("--p", spec.edge_prob);
  std::string dist = "uniform";
  gen->add_option("--dist", dist)
      ->check(CLI::IsMember({"uniform", "zipf", "repeat-tail", "round-robin"}));
  gen->add_option("--zipf-s", spec.zipf_exponent);
  gen->add_option("--length", spec.length);
  gen->add_option("--update-mix", spec.update_mix);
  gen->add_option("--seed", spec.seed);
  gen->add_option("--out", out_path);

  auto* ratio = app.add_subcommand("ratio", "competitive ratio of a trace against OPT");
  ratio->add_option("--trace", trace_path)->required();
  ratio->add_option("--alg", alg)->check(CLI::IsMember({"det", "rand"}));
  ratio->add_flag("--exact-expectation", exact);
  ratio->add_option("--trials", trials);
  ratio->add_option("--seed", seed);
  ratio->add_option("--out", out_path);

  auto* pkt = app.add_subcommand("pkt", "packet-classification adapter");
  auto* extract = pkt->add_subcommand("extract", "rule table -> dependency DAG trace");
  extract->add_option("--rules", rules_path)->required();
  extract->add_flag("--strict", strict, "constrain every intersecting pair");
  extract->add_option("--out", out_path);
  auto* classify_cmd = pkt->add_subcommand("classify", "classify packets over a rule list");
  classify_cmd->add_option("--rules", rules_path)->required();
  classify_cmd->add_option("--packets", packets_path)->required();
  classify_cmd->add_option("--alg", alg)->check(CLI::IsMember({"det", "static"}));
  classify_cmd->add_flag("--strict", strict);
  classify_cmd->add_option("--seed", seed);
  classify_cmd->add_option("--out", out_path);
  pkt->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(trace_path, alg, seed, trials, with_opt, out_path);
    if (opt_cmd->parsed()) return cmd_opt(trace_path, limit, out_path);
    if (verify->parsed())
      return cmd_verify(suite, verify_trials, seed, max_n, sequences, length, format, out_path);
    if (gen->parsed()) {
      if (dist == "zipf") spec.dist = AccessDist::Zipf;
      else if (dist == "repeat-tail") spec.dist = AccessDist::RepeatTail;
      else if (dist == "round-robin") spec.dist = AccessDist::RoundRobin;
      return cmd_gen(kind, spec, out_path);
    }
    if (ratio->parsed()) return cmd_ratio(trace_path, alg, exact, trials, seed, out_path);
    if (extract->parsed()) return cmd_pkt_extract(rules_path, strict, out_path);
    if (classify_cmd->parsed())
      return cmd_pkt_classify(rules_path, packets_path, alg, strict, seed, out_path);
  } catch (const Error& e) {
    std::cerr << "error[" << errc_name(e.code()) << "]: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
