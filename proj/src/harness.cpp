#include "bdr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <memory>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <thread>

#include "bdr/error.hpp"

namespace bdr {

std::uint32_t PhaseLedger::max_messages() const {
  return messages.empty() ? 0 : *std::max_element(messages.begin(), messages.end());
}

std::uint32_t PhaseLedger::largest_payload() const {
  return max_payload.empty() ? 0 : *std::max_element(max_payload.begin(), max_payload.end());
}

GatherResult run_gather_phase(const ConnectivityGraph& g, int k, std::string phase) {
  if (k < 1) throw std::invalid_argument("gather radius must be at least 1");
  const std::size_t n = g.size();
  GatherResult out;
  out.ledger.phase = std::move(phase);
  out.ledger.messages.assign(n, 0);
  out.ledger.max_payload.assign(n, 0);

  std::vector<std::vector<NodeId>> known(n), fresh(n), next(n);
  for (NodeId u = 0; u < n; ++u) known[u] = fresh[u] = {u};
  std::vector<NodeId> stamp(n, static_cast<NodeId>(-1));

  for (int round = 0; round < k; ++round) {
    for (NodeId v = 0; v < n; ++v) {
      if (fresh[v].empty() || g.degree(v) == 0) continue;
      std::uint32_t payload = 0;
      for (NodeId w : fresh[v]) payload += 1 + static_cast<std::uint32_t>(g.degree(w));
      ++out.ledger.messages[v];
      out.ledger.max_payload[v] = std::max(out.ledger.max_payload[v], payload);
    }
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId w : known[u]) stamp[w] = u;
      next[u].clear();
      for (NodeId v : g.neighbors(u))
        for (NodeId w : fresh[v])
          if (stamp[w] != u) {
            stamp[w] = u;
            next[u].push_back(w);
          }
    }
    for (NodeId u = 0; u < n; ++u) {
      known[u].insert(known[u].end(), next[u].begin(), next[u].end());
      std::swap(fresh[u], next[u]);
    }
    std::fill(stamp.begin(), stamp.end(), static_cast<NodeId>(-1));
  }

  // Each view is assembled from the adjacency records the node collected.
  out.views.reserve(n);
  for (NodeId u = 0; u < n; ++u) out.views.push_back(induced_subgraph(g, std::move(known[u]), u));
  return out;
}

MetricTriple evaluate(const GroundTruth& gt, const Classification& cls) {
  if (gt.labels.size() != cls.size())
    throw std::invalid_argument("ground truth and classification cover different node sets");
  std::array<std::size_t, 3> total{}, hit{};
  for (std::size_t v = 0; v < cls.size(); ++v) {
    const auto l = static_cast<std::size_t>(gt.labels[v]);
    ++total[l];
    const bool interior = cls[v] == Verdict::Interior;
    hit[l] += gt.labels[v] == TruthLabel::Interior ? !interior : interior;
  }
  auto pct = [&](TruthLabel l) -> std::optional<double> {
    const auto i = static_cast<std::size_t>(l);
    if (total[i] == 0) return std::nullopt;
    return 100.0 * static_cast<double>(hit[i]) / static_cast<double>(total[i]);
  };
  return {pct(TruthLabel::Mandatory), pct(TruthLabel::Optional), pct(TruthLabel::Interior)};
}

std::string AlgorithmSpec::label() const {
  if (!name.empty()) return name;
  std::string s = kind == AlgorithmKind::EcBr ? "ecbr" : "mdsbr";
  if (kind == AlgorithmKind::MdsBr && mdsbr.variant != EmbeddingVariant::MDS2) s += "-" + std::string(to_string(mdsbr.variant));
  if (refined) s += "+ref";
  return s;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("BDR_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::map<int, std::size_t> circle_length_histogram(const ConnectivityGraph& g) {
  std::map<int, std::size_t> hist;
  for (NodeId u = 0; u < g.size(); ++u) ++hist[max_tight_circle(ring_subgraph(g, u).graph)];
  return hist;
}

namespace {

void require_bound(const PhaseLedger& ledger, std::uint32_t bound) {
  if (ledger.max_messages() > bound)
    throw std::logic_error("phase '" + ledger.phase + "' sent " + std::to_string(ledger.max_messages()) +
                           " messages from one node, bound is " + std::to_string(bound));
}

struct AlgorithmOutcome {
  TrialRow row;
  std::map<int, std::size_t> histogram;
  double marked_sum = 0;
  std::size_t marked_count = 0;
  std::size_t d_max = 0;
  std::map<std::string, PhaseMaximum> ledger;
};

// Shared per-trial state so variants reuse gathered views and embeddings.
class Trial {
 public:
  Trial(const ConnectivityGraph& g) : g_(g) {}

  const GatherResult& gather(int k) {
    auto& slot = gathers_[k];
    if (!slot) {
      slot = std::make_unique<GatherResult>(run_gather_phase(g_, k, "gather-" + std::to_string(k)));
      require_bound(slot->ledger, static_cast<std::uint32_t>(k));
    }
    return *slot;
  }

  const std::vector<LocalEmbedding>& embeddings(EmbeddingVariant variant) {
    auto& slot = embeddings_[variant];
    if (!slot) {
      const auto& views = gather(gather_radius(variant)).views;
      slot = std::make_unique<std::vector<LocalEmbedding>>();
      slot->reserve(views.size());
      for (const Subgraph& view : views) slot->push_back(embed_view(view, variant));
    }
    return *slot;
  }

  const std::vector<int>& circle_lengths(bool reduced) {
    auto& slot = lengths_[reduced];
    if (!slot) {
      const auto& views = gather(2).views;
      slot = std::make_unique<std::vector<int>>();
      slot->reserve(views.size());
      EcBrParams p;
      p.use_mis_reduction = reduced;
      for (const Subgraph& view : views) slot->push_back(ecbr_circle_length(ring_subgraph(view), p));
    }
    return *slot;
  }

 private:
  const ConnectivityGraph& g_;
  std::map<int, std::unique_ptr<GatherResult>> gathers_;
  std::map<EmbeddingVariant, std::unique_ptr<std::vector<LocalEmbedding>>> embeddings_;
  std::map<bool, std::unique_ptr<std::vector<int>>> lengths_;
};

void note(std::map<std::string, PhaseMaximum>& ledger, const PhaseLedger& phase) {
  auto& m = ledger[phase.phase];
  m.messages = std::max(m.messages, phase.max_messages());
  m.payload = std::max(m.payload, phase.largest_payload());
}

Classification classify_in_trial(const ConnectivityGraph& g, Trial& trial, const AlgorithmSpec& spec,
                                 AlgorithmOutcome& out) {
  const std::size_t n = g.size();
  Classification cls(n, Verdict::Interior);

  if (spec.kind == AlgorithmKind::EcBr) {
    note(out.ledger, trial.gather(2).ledger);
    const auto& lengths = trial.circle_lengths(spec.ecbr.use_mis_reduction);
    for (NodeId u = 0; u < n; ++u) {
      cls[u] = ecbr_verdict(lengths[u], spec.ecbr);
      ++out.histogram[lengths[u]];
    }
    if (spec.refined) {
      // One round: every node announces its verdict to its neighbors.
      PhaseLedger exchange{"ecbr-refine", std::vector<std::uint32_t>(n, 0), std::vector<std::uint32_t>(n, 0)};
      for (NodeId u = 0; u < n; ++u)
        if (g.degree(u) > 0) exchange.messages[u] = exchange.max_payload[u] = 1;
      require_bound(exchange, 1);
      note(out.ledger, exchange);
      cls = ecbr_refine(g, cls, spec.ecbr.gamma);
    }
  } else {
    const auto& p = spec.mdsbr;
    const auto& gathered = trial.gather(gather_radius(p.variant));
    note(out.ledger, gathered.ledger);
    const auto& emb = trial.embeddings(p.variant);
    for (NodeId u = 0; u < n; ++u) cls[u] = mdsbr_classify_embedded(gathered.views[u], emb[u], p);

    if (spec.refined && p.r_min > 0) {
      const Subgraph marked = induced_subgraph(g, boundary_nodes(cls));
      const GatherResult local = run_gather_phase(marked.graph, p.r_min, "mdsbr-refine");
      require_bound(local.ledger, static_cast<std::uint32_t>(p.r_min));
      note(out.ledger, local.ledger);
      for (NodeId i = 0; i < marked.graph.size(); ++i) {
        const Subgraph& view = local.views[i];
        out.marked_sum += static_cast<double>(view.graph.size() - 1);
        ++out.marked_count;
        if (!refine_survives(view, p.r_min)) cls[marked.to_global[i]] = Verdict::Interior;
      }
    }
  }
  return cls;
}

AlgorithmOutcome run_algorithm(const ConnectivityGraph& g, const GroundTruth& gt, Trial& trial,
                               const AlgorithmSpec& spec) {
  AlgorithmOutcome out;
  out.row.metrics = evaluate(gt, classify_in_trial(g, trial, spec, out));
  out.d_max = g.max_degree();
  return out;
}

struct TrialOutcome {
  std::uint64_t seed = 0;
  std::vector<AlgorithmOutcome> algorithms;
};

TrialOutcome run_trial(const ExperimentConfig& config, std::uint64_t seed) {
  NetworkConfig net = config.network;
  net.seed = seed;
  ConnectivityGraph g;
  try {
    g = generate_network(net);
  } catch (const GenerationError& e) {
    throw GenerationError("seed " + std::to_string(seed) + ": " + e.what());
  }
  GroundTruth gt;
  try {
    gt = compute_ground_truth(g, config.h_min);
  } catch (const DegeneracyError& e) {
    throw DegeneracyError("seed " + std::to_string(seed) + ": " + e.what());
  }

  TrialOutcome out;
  out.seed = seed;
  Trial trial(g);
  for (const AlgorithmSpec& spec : config.algorithms) {
    AlgorithmOutcome a = run_algorithm(g, gt, trial, spec);
    a.row.seed = seed;
    a.row.nodes = g.size();
    a.row.edges = g.edge_count();
    a.row.d_avg_measured = g.average_degree();
    out.algorithms.push_back(std::move(a));
  }
  return out;
}

void accumulate(std::optional<double>& sum, std::size_t& count, const std::optional<double>& v) {
  if (!v) return;
  sum = sum.value_or(0) + *v;
  ++count;
}

std::optional<double> mean(const std::optional<double>& sum, std::size_t count) {
  if (!sum || count == 0) return std::nullopt;
  return *sum / static_cast<double>(count);
}

}  // namespace

Classification classify_network(const ConnectivityGraph& g, const AlgorithmSpec& spec,
                                std::vector<int>* circle_lengths) {
  spec.mdsbr.validate();
  spec.ecbr.validate();
  Trial trial(g);
  AlgorithmOutcome scratch;
  Classification cls = classify_in_trial(g, trial, spec, scratch);
  if (circle_lengths && spec.kind == AlgorithmKind::EcBr) *circle_lengths = trial.circle_lengths(spec.ecbr.use_mis_reduction);
  return cls;
}

std::vector<MetricsReport> run_experiment(const ExperimentConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("an experiment needs at least one trial");
  validate(config.network);
  for (const auto& spec : config.algorithms) {
    spec.mdsbr.validate();
    spec.ecbr.validate();
  }

  std::vector<TrialOutcome> outcomes(config.trials);
  std::vector<std::exception_ptr> errors(config.trials);
  const unsigned workers =
      std::min<unsigned>(config.threads ? config.threads : default_thread_count(), static_cast<unsigned>(config.trials));
  std::atomic<std::size_t> cursor{0};
  auto work = [&] {
    for (std::size_t i = cursor++; i < config.trials; i = cursor++) {
      try {
        outcomes[i] = run_trial(config, config.base_seed + i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<MetricsReport> reports;
  for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
    MetricsReport r;
    r.spec = config.algorithms[a];
    r.trials = config.trials;
    std::optional<double> sums[3];
    std::size_t counts[3] = {0, 0, 0};
    double marked_sum = 0;
    std::size_t marked_count = 0;
    for (const TrialOutcome& t : outcomes) {
      const AlgorithmOutcome& o = t.algorithms[a];
      r.rows.push_back(o.row);
      accumulate(sums[0], counts[0], o.row.metrics.mandatory_fn_pct);
      accumulate(sums[1], counts[1], o.row.metrics.optional_interior_pct);
      accumulate(sums[2], counts[2], o.row.metrics.interior_fp_pct);
      for (const auto& [len, c] : o.histogram) r.circle_length_histogram[len] += c;
      marked_sum += o.marked_sum;
      marked_count += o.marked_count;
      r.d_max = std::max(r.d_max, o.d_max);
      for (const auto& [phase, m] : o.ledger) {
        auto& agg = r.ledger[phase];
        agg.messages = std::max(agg.messages, m.messages);
        agg.payload = std::max(agg.payload, m.payload);
      }
    }
    r.mandatory_fn_pct = mean(sums[0], counts[0]);
    r.optional_interior_pct = mean(sums[1], counts[1]);
    r.interior_fp_pct = mean(sums[2], counts[2]);
    if (r.spec.kind == AlgorithmKind::MdsBr && r.spec.refined && r.spec.mdsbr.r_min > 0 && marked_count > 0)
      r.avg_marked_neighborhood_size = marked_sum / static_cast<double>(marked_count);
    reports.push_back(std::move(r));
  }
  return reports;
}

MisCalibration calibrate_mis_threshold(const NetworkConfig& network, std::size_t layouts, std::uint64_t base_seed,
                                       double h_min) {
  MisCalibration out;
  for (std::size_t i = 0; i < layouts; ++i) {
    NetworkConfig net = network;
    net.seed = base_seed + i;
    const ConnectivityGraph g = generate_network(net);
    const GroundTruth gt = compute_ground_truth(g, h_min);
    for (NodeId u = 0; u < g.size(); ++u) {
      if (gt.labels[u] == TruthLabel::Optional) continue;
      const int len = max_tight_circle(mis_reduce(ring_subgraph(g, u)).graph);
      ++(gt.labels[u] == TruthLabel::Interior ? out.interior_lengths : out.mandatory_lengths)[len];
    }
  }
  auto total = [](const std::map<int, std::size_t>& h) {
    std::size_t t = 0;
    for (const auto& [len, c] : h) t += c;
    return t;
  };
  const double n_int = static_cast<double>(std::max<std::size_t>(1, total(out.interior_lengths)));
  const double n_man = static_cast<double>(std::max<std::size_t>(1, total(out.mandatory_lengths)));
  int top = 3;
  for (const auto* h : {&out.interior_lengths, &out.mandatory_lengths})
    if (!h->empty()) top = std::max(top, h->rbegin()->first + 1);
  out.balanced_error = 2;
  for (int t = 3; t <= top; ++t) {
    std::size_t int_below = 0, man_above = 0;
    for (const auto& [len, c] : out.interior_lengths) int_below += len < t ? c : 0;
    for (const auto& [len, c] : out.mandatory_lengths) man_above += len >= t ? c : 0;
    const double err = 0.5 * (static_cast<double>(int_below) / n_int + static_cast<double>(man_above) / n_man);
    if (err < out.balanced_error) {
      out.balanced_error = err;
      out.threshold = t;
    }
  }
  return out;
}

namespace {

std::string fixed(const std::optional<double>& v) {
  if (!v) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", *v);
  return buf;
}

nlohmann::json nullable(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

}  // namespace

void write_csv(std::ostream& out, const std::vector<MetricsReport>& reports) {
  out << "seed,algorithm,refined,mandatory_fn_pct,optional_interior_pct,interior_fp_pct,nodes,edges,d_avg_measured\n";
  const std::size_t trials = reports.empty() ? 0 : reports.front().rows.size();
  for (std::size_t t = 0; t < trials; ++t)
    for (const MetricsReport& r : reports) {
      const TrialRow& row = r.rows[t];
      out << row.seed << ',' << r.spec.label() << ',' << (r.spec.refined ? "true" : "false") << ','
          << fixed(row.metrics.mandatory_fn_pct) << ',' << fixed(row.metrics.optional_interior_pct) << ','
          << fixed(row.metrics.interior_fp_pct) << ',' << row.nodes << ',' << row.edges << ','
          << fixed(row.d_avg_measured) << '\n';
    }
}

nlohmann::json report_to_json(const std::vector<MetricsReport>& reports) {
  nlohmann::json doc = nlohmann::json::array();
  for (const MetricsReport& r : reports) {
    nlohmann::json j;
    j["algorithm"] = r.spec.label();
    j["kind"] = r.spec.kind == AlgorithmKind::EcBr ? "ecbr" : "mdsbr";
    j["refined"] = r.spec.refined;
    if (r.spec.kind == AlgorithmKind::EcBr) {
      j["params"] = {{"circle_threshold", r.spec.ecbr.circle_threshold},
                     {"gamma", r.spec.ecbr.gamma},
                     {"use_mis_reduction", r.spec.ecbr.use_mis_reduction},
                     {"mis_threshold", r.spec.ecbr.mis_threshold}};
    } else {
      j["params"] = {{"alpha_min", r.spec.mdsbr.alpha_min},
                     {"r_min", r.spec.mdsbr.r_min},
                     {"variant", std::string(to_string(r.spec.mdsbr.variant))},
                     {"micro_hole_filter", r.spec.mdsbr.micro_hole_filter}};
    }
    j["trials"] = r.trials;
    j["mandatory_fn_pct"] = nullable(r.mandatory_fn_pct);
    j["optional_interior_pct"] = nullable(r.optional_interior_pct);
    j["interior_fp_pct"] = nullable(r.interior_fp_pct);
    j["d_max"] = r.d_max;
    j["avg_marked_neighborhood_size"] = nullable(r.avg_marked_neighborhood_size);
    auto& hist = j["circle_length_histogram"] = nlohmann::json::object();
    for (const auto& [len, c] : r.circle_length_histogram) hist[std::to_string(len)] = c;
    auto& ledger = j["ledger"] = nlohmann::json::object();
    for (const auto& [phase, m] : r.ledger) ledger[phase] = {{"max_messages", m.messages}, {"max_payload", m.payload}};
    auto& rows = j["rows"] = nlohmann::json::array();
    for (const TrialRow& row : r.rows)
      rows.push_back({{"seed", row.seed},
                      {"mandatory_fn_pct", nullable(row.metrics.mandatory_fn_pct)},
                      {"optional_interior_pct", nullable(row.metrics.optional_interior_pct)},
                      {"interior_fp_pct", nullable(row.metrics.interior_fp_pct)},
                      {"nodes", row.nodes},
                      {"edges", row.edges},
                      {"d_avg_measured", row.d_avg_measured}});
    doc.push_back(std::move(j));
  }
  return doc;
}

}  // namespace bdr
