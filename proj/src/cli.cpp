#include "semnet/cli.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "csv.hpp"
#include "json.hpp"
#include "semnet/error.hpp"
#include "semnet/graph.hpp"
#include "semnet/nal.hpp"
#include "semnet/netkit.hpp"
#include "semnet/owl.hpp"
#include "semnet/path_algebra.hpp"
#include "semnet/rdfs.hpp"
#include "semnet/triple_store.hpp"
#include "semnet/walker.hpp"

namespace semnet::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::string output;
  std::string format;
  std::string mode = "rdfs";
  bool fail_on_inconsistency = false;
  bool inconsistent = false;
  std::string rules = "deduction,induction";
  std::size_t rounds = 4;
  std::string metric;
  std::vector<std::string> predicates;
  std::string expr;
  bool include_literals = false;
  double alpha = 0.85;
  std::optional<double> delta;
  std::size_t steps = 0;
  unsigned k = 1;
  double tol = 1e-10;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> activate;
  std::string value_predicate;
  std::string label_predicate;
  std::string source;
  std::string target;
  std::string grammar;
  std::size_t walkers = 1;
  std::vector<std::string> starts;
  std::optional<std::uint32_t> max_depth;
};

struct Input {
  std::string path;
  std::string bytes;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LookupError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_atomic(const std::string& path, const std::string& bytes) {
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw LookupError("cannot write " + tmp.string());
    out << bytes;
    out.flush();
    if (!out) throw LookupError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw LookupError("cannot rename onto " + path + ": " + ec.message());
  }
}

Term parse_uri(const std::string& text) {
  std::string s = text;
  if (s.size() >= 2 && s.front() == '<' && s.back() == '>') s = s.substr(1, s.size() - 2);
  try {
    return Term::uri(s);
  } catch (const ConstraintError& e) {
    throw UsageError("invalid URI '" + text + "': " + e.what());
  }
}

double parse_number(const std::string& text, const std::string& what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ConstraintError(what + ": '" + text + "' is not a number");
  return v;
}

TripleStore load_store(const std::vector<Input>& inputs) {
  TripleStore store;
  BlankNodeAllocator blanks;
  for (const Input& in : inputs) {
    try {
      for (Triple& t : parse_ntriples(in.bytes, blanks)) store.insert(std::move(t));
    } catch (const SyntaxError& e) {
      throw SyntaxError(in.path + ": " + e.what(), e.line(), e.column());
    } catch (const ConstraintError& e) {
      throw ConstraintError(in.path + ": " + e.what());
    }
  }
  return store;
}

std::string with_newline(std::string s) {
  if (s.empty() || s.back() != '\n') s += '\n';
  return s;
}

void require_format(const RunConfig& c, std::initializer_list<std::string_view> allowed) {
  for (auto f : allowed)
    if (c.format == f) return;
  std::string list;
  for (auto f : allowed) list += (list.empty() ? "" : ", ") + std::string(f);
  throw UsageError("--format " + c.format + " is not available for this command (use " + list + ")");
}

// --- subcommands ------------------------------------------------------------

std::string run_load(RunConfig& c, const TripleStore& store) {
  if (c.format.empty()) c.format = "ntriples";
  require_format(c, {"ntriples"});
  return serialize_ntriples(store);
}

std::string run_export(RunConfig& c, const TripleStore& store) {
  if (c.format.empty()) c.format = "ntriples";
  require_format(c, {"ntriples", "csv", "json"});
  if (c.format == "ntriples") return serialize_ntriples(store);
  const auto triples = store.triples();
  if (c.format == "csv") {
    std::string out = "subject,predicate,object\n";
    for (const Triple& t : triples)
      out += detail::csv_field(t.s.display()) + "," + detail::csv_field(t.p.display()) + "," +
             detail::csv_field(t.o.display()) + "\n";
    return out;
  }
  ordered_json arr = ordered_json::array();
  for (const Triple& t : triples)
    arr.push_back({{"s", t.s.to_ntriples()}, {"p", t.p.to_ntriples()}, {"o", t.o.to_ntriples()}});
  return arr.dump(2) + "\n";
}

std::vector<nal::Syllogism> parse_rules(const std::string& text) {
  std::vector<nal::Syllogism> rules;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      rules.push_back(nal::syllogism_from_string(item));
    } catch (const Error& e) {
      throw UsageError(std::string("--rules: ") + e.what());
    }
  }
  if (rules.empty()) throw UsageError("--rules lists no syllogisms");
  return rules;
}

std::string run_reason(RunConfig& c, TripleStore& store, std::ostream& err) {
  if (c.mode == "nal") {
    if (c.format.empty()) c.format = "json";
    require_format(c, {"json", "ntriples"});
    auto rules = parse_rules(c.rules);
    nal::Knowledge kb = nal::decode(store);
    nal::SaturationOptions opts;
    opts.k = c.k;
    opts.max_rounds = c.rounds;
    auto result = nal::saturate(kb.judgments, rules, opts);
    if (c.format == "ntriples") {
      for (const auto& j : result)
        for (Triple& t : nal::encode(j)) store.insert(std::move(t));
      return serialize_ntriples(store);
    }
    std::set<Term> asserted;
    for (const auto& j : kb.judgments) asserted.insert(j.pointer);
    ordered_json arr = ordered_json::array();
    for (const auto& j : result)
      arr.push_back({{"subject", j.subject.display()},
                     {"predicate", j.predicate.display()},
                     {"frequency", j.truth.frequency},
                     {"confidence", j.truth.confidence},
                     {"pointer", j.pointer.display()},
                     {"derived", !asserted.contains(j.pointer)}});
    return arr.dump(2) + "\n";
  }

  if (c.format.empty()) c.format = "ntriples";
  require_format(c, {"ntriples", "json"});
  if (c.mode == "rdfs") {
    auto ents = materialize_rdfs(store);
    if (c.format == "json") return to_json_lines(ents);
    return serialize_ntriples(store);
  }
  if (c.mode != "owl") throw UsageError("--mode must be rdfs, owl or nal");

  auto ents = materialize_rdfs(store);
  OwlResult owl = materialize_owl(store);
  auto more = materialize_rdfs(store);
  ents.insert(ents.end(), owl.entailments.begin(), owl.entailments.end());
  ents.insert(ents.end(), more.begin(), more.end());
  for (const auto& w : owl.warnings) err << "warning: " << w << "\n";
  for (const auto& inc : owl.inconsistencies)
    err << "inconsistency: " << inc.instance.display() << " violates the cardinality of "
        << inc.restriction.on_property.display() << " on " << inc.restriction.on_class.display()
        << "\n";

  std::string body;
  if (c.format == "json") {
    ordered_json j;
    j["entailments"] = ordered_json::array();
    for (const auto& line : [&] {
           std::vector<std::string> lines;
           std::stringstream ss(to_json_lines(ents));
           for (std::string l; std::getline(ss, l);)
             if (!l.empty()) lines.push_back(l);
           return lines;
         }())
      j["entailments"].push_back(ordered_json::parse(line));
    j["inconsistencies"] = ordered_json::parse(to_json(owl.inconsistencies));
    j["warnings"] = owl.warnings;
    body = j.dump(2) + "\n";
  } else {
    body = serialize_ntriples(store);
  }
  c.inconsistent = c.fail_on_inconsistency && !owl.inconsistencies.empty();
  return body;
}

// The analysed graph: a single predicate, or a path expression's result.
Graph build_graph(const RunConfig& c, const TripleStore& store) {
  if (!c.expr.empty()) {
    PathExpr e = parse_path_expr(c.expr);
    std::vector<Term> preds;
    for (const auto& p : c.predicates) preds.push_back(parse_uri(p));
    if (preds.empty()) {
      auto s = e.slices();
      preds.assign(s.begin(), s.end());
    }
    if (preds.empty()) throw UsageError("--expr references no slice; add --predicate");
    RelationTensor tensor = tensor_from_store(store, preds, c.include_literals);
    // Only vertices touched by a nonzero entry; the rest are tensor padding.
    SparseMatrix m = eval_path_expr(e, tensor);
    std::vector<bool> used(m.dimension(), false);
    for (const auto& x : m.entries()) used[x.row] = used[x.col] = true;
    std::vector<Term> keep;
    std::vector<VertexId> remap(m.dimension(), 0);
    for (std::size_t i = 0; i < used.size(); ++i)
      if (used[i]) {
        remap[i] = static_cast<VertexId>(keep.size());
        keep.push_back(tensor.vertices()[i]);
      }
    std::vector<Edge> edges;
    for (const auto& x : m.entries()) edges.emplace_back(remap[x.row], remap[x.col]);
    return Graph(std::move(keep), std::move(edges));
  }
  if (c.predicates.size() != 1)
    throw UsageError("analyze needs exactly one --predicate (or an --expr)");
  return graph_from_store(store, parse_uri(c.predicates.front()), c.include_literals);
}

VertexId vertex_of(const Graph& g, const std::string& text, const std::string& flag) {
  if (text.empty()) throw UsageError(flag + " is required for this metric");
  auto v = g.index_of(parse_uri(text));
  if (!v) throw LookupError(flag + " " + text + " is not a vertex of the analysed graph");
  return *v;
}

std::string scalar_output(const RunConfig& c, const std::string& name, double value) {
  std::ostringstream os;
  os.precision(17);
  if (c.format == "json") {
    ordered_json j;
    j[name] = value;
    return j.dump(2) + "\n";
  }
  os << "metric,value\n" << name << "," << value << "\n";
  return os.str();
}

std::string run_analyze(RunConfig& c, const TripleStore& store) {
  if (c.format.empty()) c.format = "csv";
  require_format(c, {"csv", "json"});
  if (c.metric.empty()) throw UsageError("--metric is required");
  if (c.metric == "spread" && !c.delta) throw UsageError("--delta is required for spread");

  Graph g = build_graph(c, store);
  netkit::PowerIteration params{c.tol, 100'000};
  auto rank_out = [&](const netkit::RankVector& r) {
    return with_newline(c.format == "json" ? netkit::to_json(g, r) : netkit::to_csv(g, r));
  };

  if (c.metric == "sp") {
    VertexId s = vertex_of(g, c.source, "--source");
    auto dist = netkit::bfs_distances(g, s);
    ordered_json j = ordered_json::object();
    std::string csv = "vertex,distance\n";
    for (VertexId v = 0; v < dist.size(); ++v) {
      if (!c.target.empty() && v != vertex_of(g, c.target, "--target")) continue;
      if (dist[v] == netkit::kUnreachable) {
        if (c.target.empty()) continue;
        j[g.vertex(v).display()] = nullptr;
        csv += detail::csv_field(g.vertex(v).display()) + ",inf\n";
        continue;
      }
      j[g.vertex(v).display()] = dist[v];
      csv += detail::csv_field(g.vertex(v).display()) + "," + std::to_string(dist[v]) + "\n";
    }
    return c.format == "json" ? j.dump(2) + "\n" : csv;
  }
  if (c.metric == "geodesics") {
    auto s = netkit::geodesic_summary(g);
    return with_newline(c.format == "json" ? netkit::to_json(g, s) : netkit::to_csv(g, s));
  }
  if (c.metric == "closeness") return rank_out(netkit::closeness(g));
  if (c.metric == "betweenness") return rank_out(netkit::betweenness(g));
  if (c.metric == "stationary") return rank_out(netkit::stationary_distribution(g, params));
  if (c.metric == "pagerank") return rank_out(netkit::pagerank(g, c.alpha, params));
  if (c.metric == "spread") {
    if (c.activate.empty()) throw UsageError("spread needs at least one --activate uri[=energy]");
    std::map<VertexId, double> seeds;
    for (const auto& a : c.activate) {
      auto eq = a.rfind('=');
      std::string uri = a, energy = "1";
      if (eq != std::string::npos && eq > 0 && a.find('>', eq) == std::string::npos) {
        uri = a.substr(0, eq);
        energy = a.substr(eq + 1);
      }
      seeds[vertex_of(g, uri, "--activate")] += parse_number(energy, "--activate energy");
    }
    return rank_out(netkit::spreading_activation(g, seeds, c.steps, *c.delta));
  }
  if (c.metric == "assort-scalar") {
    if (c.value_predicate.empty()) throw UsageError("assort-scalar needs --value-predicate");
    auto pid = store.find(parse_uri(c.value_predicate));
    std::map<VertexId, double> values;
    if (pid)
      store.scan(std::nullopt, *pid, std::nullopt, [&](IdTriple t) {
        auto v = g.index_of(store.term(t.s));
        const Term& o = store.term(t.o);
        if (!v || !o.is_literal()) return;
        values[*v] = parse_number(o.value(), "value of " + store.term(t.s).display());
      });
    return scalar_output(c, "r", netkit::assortativity_scalar(g, values));
  }
  if (c.metric == "assort-nominal") {
    if (c.label_predicate.empty()) throw UsageError("assort-nominal needs --label-predicate");
    auto pid = store.find(parse_uri(c.label_predicate));
    std::map<VertexId, std::string> labels;
    if (pid)
      store.scan(std::nullopt, *pid, std::nullopt, [&](IdTriple t) {
        auto v = g.index_of(store.term(t.s));
        if (!v) return;
        std::string label = store.term(t.o).display();
        auto [it, fresh] = labels.emplace(*v, label);
        if (!fresh && label < it->second) it->second = label;  // smallest label wins
      });
    return scalar_output(c, "r", netkit::assortativity_nominal(g, labels));
  }
  throw UsageError("unknown --metric " + c.metric);
}

std::string run_algebra(RunConfig& c, const TripleStore& store) {
  if (c.format.empty()) c.format = "csv";
  require_format(c, {"csv", "json"});
  if (c.expr.empty()) throw UsageError("--expr is required");
  PathExpr e = parse_path_expr(c.expr);
  std::vector<Term> preds;
  for (const auto& p : c.predicates) preds.push_back(parse_uri(p));
  if (preds.empty()) {
    auto s = e.slices();
    preds.assign(s.begin(), s.end());
  }
  if (preds.empty()) throw UsageError("--expr references no slice; add --predicate");
  RelationTensor tensor = tensor_from_store(store, preds, c.include_literals);
  SparseMatrix m = eval_path_expr(e, tensor);
  if (c.format == "csv") return to_csv(m, tensor.vertices());
  ordered_json j;
  j["vertices"] = ordered_json::array();
  for (const Term& v : tensor.vertices()) j["vertices"].push_back(v.display());
  j["entries"] = ordered_json::array();
  for (const auto& en : m.entries())
    j["entries"].push_back({tensor.vertices()[en.row].display(),
                            tensor.vertices()[en.col].display(), en.value});
  return j.dump(2) + "\n";
}

std::string run_walk(RunConfig& c, const TripleStore& store, std::vector<Input>& inputs) {
  if (c.format.empty()) c.format = "csv";
  require_format(c, {"csv", "json"});
  if (c.grammar.empty()) throw UsageError("--grammar is required");
  Input grammar_file{c.grammar, read_file(c.grammar)};
  Grammar grammar = parse_grammar(grammar_file.bytes);
  inputs.push_back(std::move(grammar_file));

  if (!c.source.empty()) {
    if (!c.max_depth) throw UsageError("--max-depth is required with --source");
    const auto& node = grammar.nodes.at(grammar.start);
    if (!node.query) throw ConfigError("grammar start node is a halt node");
    auto depth = run_geodesic_walkers(store, *node.query, parse_uri(c.source), *c.max_depth);
    if (c.format == "json") {
      ordered_json j = ordered_json::object();
      for (const auto& [t, d] : depth) j[t.display()] = d;
      return j.dump(2) + "\n";
    }
    std::string out = "vertex,depth\n";
    for (const auto& [t, d] : depth)
      out += detail::csv_field(t.display()) + "," + std::to_string(d) + "\n";
    return out;
  }

  if (!c.seed) throw UsageError("--seed is required for walker runs");
  WalkOptions opts;
  opts.walkers = c.walkers;
  opts.steps = c.steps;
  opts.seed = *c.seed;
  for (const auto& s : c.starts) opts.starts.push_back(parse_uri(s));
  VisitCounts visits = run_random_walkers(store, grammar, opts);
  return c.format == "json" ? to_json(visits) : to_csv(visits);
}

ordered_json manifest(const RunConfig& c, const std::vector<std::string>& args,
                      const std::vector<Input>& inputs, const std::string& output_bytes) {
  ordered_json m;
  m["command"] = c.command;
  m["args"] = args;
  ordered_json cfg;
  cfg["format"] = c.format;
  if (c.command == "reason") {
    cfg["mode"] = c.mode;
    if (c.mode == "nal") {
      cfg["rules"] = c.rules;
      cfg["k"] = c.k;
      cfg["rounds"] = c.rounds;
    }
    cfg["fail_on_inconsistency"] = c.fail_on_inconsistency;
  } else if (c.command == "analyze" || c.command == "algebra") {
    if (!c.metric.empty()) cfg["metric"] = c.metric;
    cfg["predicates"] = c.predicates;
    if (!c.expr.empty()) cfg["expr"] = c.expr;
    cfg["include_literals"] = c.include_literals;
    if (c.command == "analyze") {
      cfg["alpha"] = c.alpha;
      cfg["tol"] = c.tol;
      cfg["steps"] = c.steps;
      if (c.delta) cfg["delta"] = *c.delta;
      if (!c.activate.empty()) cfg["activate"] = c.activate;
      if (!c.source.empty()) cfg["source"] = c.source;
      if (!c.target.empty()) cfg["target"] = c.target;
      if (!c.value_predicate.empty()) cfg["value_predicate"] = c.value_predicate;
      if (!c.label_predicate.empty()) cfg["label_predicate"] = c.label_predicate;
    }
  } else if (c.command == "walk") {
    cfg["grammar"] = c.grammar;
    if (!c.source.empty()) {
      cfg["source"] = c.source;
      cfg["max_depth"] = *c.max_depth;
    } else {
      cfg["walkers"] = c.walkers;
      cfg["steps"] = c.steps;
      cfg["seed"] = *c.seed;
      cfg["starts"] = c.starts;
    }
  }
  m["config"] = cfg;
  m["inputs"] = ordered_json::array();
  for (const Input& in : inputs)
    m["inputs"].push_back({{"path", in.path}, {"bytes", in.bytes.size()}, {"sha256", sha256_hex(in.bytes)}});
  m["output"] = {{"path", c.output}, {"bytes", output_bytes.size()}, {"sha256", sha256_hex(output_bytes)}};
  return m;
}

void add_inputs(CLI::App* sub, RunConfig& c) {
  sub->add_option("inputs", c.inputs, "N-Triples input files")->required()->check(CLI::ExistingFile);
  sub->add_option("-o,--output", c.output, "output path (a manifest is written beside it)")->required();
}

void add_format(CLI::App* sub, RunConfig& c) {
  sub->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"csv", "json", "ntriples"}));
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i)
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return os.str();
}

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"semnet: triple store, reasoning and network analytics"};
  app.require_subcommand(1);

  auto* load = app.add_subcommand("load", "parse and validate N-Triples, write the canonical store");
  add_inputs(load, c);
  add_format(load, c);

  auto* reason = app.add_subcommand("reason", "materialize entailments or run NAL inference");
  add_inputs(reason, c);
  add_format(reason, c);
  reason->add_option("--mode", c.mode)->check(CLI::IsMember({"rdfs", "owl", "nal"}));
  reason->add_flag("--fail-on-inconsistency", c.fail_on_inconsistency);
  reason->add_option("--rules", c.rules, "comma-separated syllogisms");
  reason->add_option("--k", c.k)->check(CLI::Range(1u, 1'000'000u));
  reason->add_option("--rounds", c.rounds);

  auto* analyze = app.add_subcommand("analyze", "single-relational network metrics");
  add_inputs(analyze, c);
  add_format(analyze, c);
  analyze->add_option("--metric", c.metric)
      ->required()
      ->check(CLI::IsMember({"sp", "geodesics", "closeness", "betweenness", "stationary",
                             "pagerank", "spread", "assort-scalar", "assort-nominal"}));
  analyze->add_option("--predicate", c.predicates);
  analyze->add_option("--expr", c.expr, "derive the graph from a path expression");
  analyze->add_flag("--include-literals", c.include_literals);
  analyze->add_option("--alpha", c.alpha)
      ->check(CLI::Validator(
          [](std::string& s) -> std::string {
            double v = 0;
            auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc() || !(v > 0.0 && v <= 1.0)) return "alpha must lie in (0, 1]";
            return {};
          },
          "(0,1]"));
  analyze->add_option("--delta", c.delta)->check(CLI::Range(0.0, 1.0));
  analyze->add_option("--steps", c.steps);
  analyze->add_option("--tol", c.tol)->check(CLI::PositiveNumber);
  analyze->add_option("--activate", c.activate, "seed vertex, optionally uri=energy");
  analyze->add_option("--value-predicate", c.value_predicate);
  analyze->add_option("--label-predicate", c.label_predicate);
  analyze->add_option("--source", c.source);
  analyze->add_option("--target", c.target);

  auto* algebra = app.add_subcommand("algebra", "evaluate a path-algebra expression");
  add_inputs(algebra, c);
  add_format(algebra, c);
  algebra->add_option("--expr", c.expr)->required();
  algebra->add_option("--predicate", c.predicates, "tensor slices (default: those in --expr)");
  algebra->add_flag("--include-literals", c.include_literals);

  auto* walk = app.add_subcommand("walk", "grammar-based random or geodesic walkers");
  add_inputs(walk, c);
  add_format(walk, c);
  walk->add_option("--grammar", c.grammar)->required()->check(CLI::ExistingFile);
  walk->add_option("--steps", c.steps);
  walk->add_option("--seed", c.seed);
  walk->add_option("--walkers", c.walkers)->check(CLI::PositiveNumber);
  walk->add_option("--start", c.starts, "explicit start vertex (repeatable)");
  walk->add_option("--source", c.source, "run geodesic walkers from this vertex");
  walk->add_option("--max-depth", c.max_depth);

  auto* exp = app.add_subcommand("export", "convert a store to ntriples, csv or json");
  add_inputs(exp, c);
  add_format(exp, c);

  std::vector<std::string> argv_store{"semnet"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    std::vector<Input> inputs;
    for (const auto& p : c.inputs) inputs.push_back({p, read_file(p)});
    TripleStore store = load_store(inputs);

    std::string body;
    if (c.command == "load") body = run_load(c, store);
    else if (c.command == "export") body = run_export(c, store);
    else if (c.command == "reason") body = run_reason(c, store, err);
    else if (c.command == "analyze") body = run_analyze(c, store);
    else if (c.command == "algebra") body = run_algebra(c, store);
    else body = run_walk(c, store, inputs);

    write_atomic(c.output, body);
    write_atomic(c.output + ".manifest.json", manifest(c, args, inputs, body).dump(2) + "\n");
    return c.inconsistent ? kExitInconsistent : kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace semnet::cli
