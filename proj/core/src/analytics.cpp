#include "kg/analytics.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "kg/error.hpp"

namespace kg {

namespace {

std::string format_score(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, end);
}

void validate_vector_graph(const VectorGraph& vg) {
  if (vg.node_features.size() != vg.nodes.size())
    fail("vector graph has " + std::to_string(vg.nodes.size()) + " nodes but " +
         std::to_string(vg.node_features.size()) + " node vectors");
  if (vg.edge_features.size() != vg.edges.size())
    fail("vector graph has " + std::to_string(vg.edges.size()) + " edges but " +
         std::to_string(vg.edge_features.size()) + " edge vectors");
  for (const auto& f : vg.node_features)
    if (f.size() != vg.node_dim)
      fail("node vector of size " + std::to_string(f.size()) +
           " does not match node_dim " + std::to_string(vg.node_dim));
  for (const auto& f : vg.edge_features)
    if (f.size() != vg.edge_dim)
      fail("edge vector of size " + std::to_string(f.size()) +
           " does not match edge_dim " + std::to_string(vg.edge_dim));
  for (const auto& [u, w] : vg.edges)
    if (u >= vg.nodes.size() || w >= vg.nodes.size())
      fail("edge endpoint index out of range");
}

// Runs fn(u) for every node index, optionally across threads. Any exception
// is rethrown on the calling thread.
void for_each_node(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t u = 0; u < n; ++u) fn(u);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  unsigned workers = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (;;) {
          std::size_t u = next.fetch_add(1);
          if (u >= n) break;
          fn(u);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

VectorGraph project_edges(const Graph& g, const std::vector<std::string>& allow) {
  VectorGraph vg;
  vg.nodes = g.node_strings();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vg.nodes.size(); ++i) index.emplace(vg.nodes[i], i);

  std::set<TermId> allowed;
  for (const std::string& label : allow)
    if (auto id = g.find(label); id && g.has_label(*id)) allowed.insert(*id);

  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const Triple& t : g.edges()) {
    if (!allow.empty() && !allowed.count(t.p)) continue;
    pairs.emplace(index.at(g.str(t.s)), index.at(g.str(t.o)));
  }
  vg.edges.assign(pairs.begin(), pairs.end());
  vg.node_features.resize(vg.nodes.size());
  vg.edge_features.resize(vg.edges.size());
  return vg;
}

std::vector<std::vector<double>> run_gpf(const VectorGraph& vg, const GpfSpec& spec,
                                         std::size_t max_iters, unsigned threads) {
  if (!spec.msg || !spec.agg) fail("graph-parallel spec needs msg and agg callbacks");
  if (max_iters < 1) fail("graph-parallel run needs at least one superstep");
  validate_vector_graph(vg);

  std::size_t n = vg.nodes.size();
  std::vector<std::vector<std::size_t>> incoming(n);
  for (std::size_t e = 0; e < vg.edges.size(); ++e)
    incoming[vg.edges[e].second].push_back(e);

  std::vector<std::vector<double>> cur = vg.node_features;
  if (spec.end && spec.end(0, cur)) return cur;

  for (std::size_t iter = 1; iter <= max_iters; ++iter) {
    std::vector<std::vector<double>> next(n);
    for_each_node(n, threads, [&](std::size_t u) {
      std::vector<std::vector<double>> inbox;
      inbox.reserve(incoming[u].size());
      for (std::size_t e : incoming[u])
        inbox.push_back(spec.msg(cur[vg.edges[e].first], vg.edge_features[e]));
      for (const auto& m : inbox)
        if (m.size() != inbox.front().size())
          fail("messages of different sizes arrived at node " + vg.nodes[u]);
      std::sort(inbox.begin(), inbox.end());
      next[u] = spec.agg(cur[u], inbox);
      if (next[u].size() != vg.node_dim)
        fail("agg returned a vector of size " + std::to_string(next[u].size()) +
             " for node " + vg.nodes[u] + ", expected " + std::to_string(vg.node_dim));
    });
    cur = std::move(next);
    if (spec.end && spec.end(iter, cur)) break;
  }
  return cur;
}

std::map<std::string, double> pagerank(const Graph& g, double d, std::size_t iters,
                                       const PageRankOptions& opt) {
  if (g.nodes().empty()) fail("pagerank needs a nonempty graph");
  if (!(d > 0.0 && d < 1.0)) fail("dampening factor must lie strictly between 0 and 1");

  VectorGraph vg = project_edges(g, opt.labels);
  std::size_t n = vg.nodes.size();
  std::vector<std::size_t> outdeg(n, 0);
  std::vector<std::vector<std::size_t>> sources(n);
  for (const auto& [u, w] : vg.edges) {
    ++outdeg[u];
    sources[w].push_back(u);
  }

  std::vector<double> rank(n, 1.0 / static_cast<double>(n));
  for (std::size_t iter = 1; iter <= iters; ++iter) {
    double dangling = 0.0;
    for (std::size_t u = 0; u < n; ++u)
      if (outdeg[u] == 0) dangling += rank[u];
    double shared = d * dangling / static_cast<double>(n);
    double teleport = (1.0 - d) / static_cast<double>(n);

    std::vector<double> next(n);
    for_each_node(n, opt.threads, [&](std::size_t u) {
      std::vector<double> inbox;
      inbox.reserve(sources[u].size());
      for (std::size_t v : sources[u])
        inbox.push_back(d * rank[v] / static_cast<double>(outdeg[v]));
      std::sort(inbox.begin(), inbox.end());
      double acc = 0.0;
      for (double m : inbox) acc += m;
      acc += shared;
      acc += teleport;
      next[u] = acc;
    });

    double residual = 0.0;
    for (std::size_t u = 0; u < n; ++u) residual += std::fabs(next[u] - rank[u]);
    rank = std::move(next);
    if (opt.epsilon && residual <= *opt.epsilon) break;
  }

  std::map<std::string, double> out;
  for (std::size_t u = 0; u < n; ++u) out.emplace(vg.nodes[u], rank[u]);
  return out;
}

std::string to_scores_tsv(const std::map<std::string, double>& scores) {
  std::vector<std::pair<std::string, double>> rows(scores.begin(), scores.end());
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::string out;
  for (const auto& [node, score] : rows) {
    out += node;
    out += '\t';
    out += format_score(score);
    out += '\n';
  }
  return out;
}

}  // namespace kg
