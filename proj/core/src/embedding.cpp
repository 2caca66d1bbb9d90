#include "kg/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>

#include "kg/error.hpp"

namespace kg {

namespace {

std::string format_double(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, end);
}

double parse_double(std::string_view s, const std::string& where) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    fail("bad number '" + std::string(s) + "' in " + where);
  return x;
}

std::uint64_t parse_uint(std::string_view s, const std::string& where) {
  std::uint64_t x = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    fail("bad integer '" + std::string(s) + "' in " + where);
  return x;
}

const Tensor& entity(const EmbeddingModel& m, const std::string& name) {
  auto it = m.entity_emb.find(name);
  if (it == m.entity_emb.end()) fail("unknown node '" + name + "'");
  return it->second;
}

const Tensor& relation(const EmbeddingModel& m, const std::string& name) {
  auto it = m.relation_emb.find(name);
  if (it == m.relation_emb.end()) fail("unknown edge label '" + name + "'");
  return it->second;
}

const Tensor& hyperplane(const EmbeddingModel& m, const std::string& label) {
  auto it = m.aux.find("w:" + label);
  if (it == m.aux.end())
    fail("model has no hyperplane vector for label '" + label + "'");
  return it->second;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double l2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void scale(std::vector<double>& a, double f) {
  for (double& x : a) x *= f;
}

// Constraint column of the scoring table: normalize where the constraint is
// an equality, clip where it is a bound. RESCAL's matrix bound is on the
// entrywise 2,2-norm, which the flat data's l2 computes directly.
void project_entity(ModelKind kind, std::vector<double>& e) {
  double n = l2(e);
  switch (kind) {
    case ModelKind::TransE:
    case ModelKind::DistMult:
      if (n > 0.0) scale(e, 1.0 / n);
      break;
    case ModelKind::TransH:
    case ModelKind::RESCAL:
    case ModelKind::ComplEx:
      if (n > 1.0) scale(e, 1.0 / n);
      break;
  }
}

void project_relation(ModelKind kind, std::vector<double>& r) {
  switch (kind) {
    case ModelKind::TransE:
    case ModelKind::TransH:
      break;
    case ModelKind::DistMult:
    case ModelKind::RESCAL:
    case ModelKind::ComplEx: {
      double n = l2(r);
      if (n > 1.0) scale(r, 1.0 / n);
      break;
    }
  }
}

void project_hyperplane(std::vector<double>& w) {
  double n = l2(w);
  if (n > 0.0) scale(w, 1.0 / n);
}

Tensor& gradient_slot(std::map<std::string, Tensor>& out, const std::string& key,
                      const Tensor& like) {
  auto it = out.find(key);
  if (it == out.end()) it = out.emplace(key, Tensor::zeros(like.dims())).first;
  return it->second;
}

}  // namespace

ModelKind parse_model_kind(std::string_view name) {
  if (name == "transe") return ModelKind::TransE;
  if (name == "transh") return ModelKind::TransH;
  if (name == "distmult") return ModelKind::DistMult;
  if (name == "rescal") return ModelKind::RESCAL;
  if (name == "complex") return ModelKind::ComplEx;
  fail("unknown embedding model '" + std::string(name) +
       "', expected transe, transh, distmult, rescal, or complex");
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::TransE: return "transe";
    case ModelKind::TransH: return "transh";
    case ModelKind::DistMult: return "distmult";
    case ModelKind::RESCAL: return "rescal";
    case ModelKind::ComplEx: return "complex";
  }
  fail("unknown embedding model kind");
}

double score(const EmbeddingModel& m, const std::array<std::string, 3>& edge) {
  const std::vector<double>& es = entity(m, edge[0]).data();
  const std::vector<double>& rp = relation(m, edge[1]).data();
  const std::vector<double>& eo = entity(m, edge[2]).data();

  switch (m.kind) {
    case ModelKind::TransE: {
      double acc = 0.0;
      if (m.q == 1) {
        for (std::size_t i = 0; i < es.size(); ++i)
          acc += std::fabs(es[i] + rp[i] - eo[i]);
        return -acc;
      }
      for (std::size_t i = 0; i < es.size(); ++i) {
        double u = es[i] + rp[i] - eo[i];
        acc += u * u;
      }
      return -std::sqrt(acc);
    }
    case ModelKind::TransH: {
      const std::vector<double>& w = hyperplane(m, edge[1]).data();
      double sw = dot(es, w), ow = dot(eo, w);
      double acc = 0.0;
      for (std::size_t i = 0; i < es.size(); ++i) {
        double v = (es[i] - sw * w[i]) + rp[i] - (eo[i] - ow * w[i]);
        acc += v * v;
      }
      return -acc;
    }
    case ModelKind::DistMult: {
      // grouped so that swapping s and o gives the bit-identical value
      double acc = 0.0;
      for (std::size_t i = 0; i < es.size(); ++i) acc += rp[i] * (es[i] * eo[i]);
      return acc;
    }
    case ModelKind::RESCAL: {
      std::size_t d = es.size();
      double acc = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < d; ++j) row += rp[i * d + j] * eo[j];
        acc += es[i] * row;
      }
      return acc;
    }
    case ModelKind::ComplEx: {
      // real part of Σ e_s · r · conj(e_o); with all-zero imaginary parts the
      // first term alone survives and matches the DistMult grouping exactly
      double acc = 0.0;
      for (std::size_t i = 0; i < es.size(); i += 2) {
        double a = es[i], b = es[i + 1];
        double c = rp[i], d = rp[i + 1];
        double f = eo[i], g = eo[i + 1];
        acc += c * (a * f);
        acc += c * (b * g);
        acc += d * (a * g);
        acc -= d * (b * f);
      }
      return acc;
    }
  }
  fail("unknown embedding model kind");
}

std::map<std::string, Tensor> score_gradient(const EmbeddingModel& m,
                                             const std::array<std::string, 3>& edge) {
  const Tensor& ts = entity(m, edge[0]);
  const Tensor& tr = relation(m, edge[1]);
  const Tensor& to = entity(m, edge[2]);
  const std::vector<double>& es = ts.data();
  const std::vector<double>& rp = tr.data();
  const std::vector<double>& eo = to.data();

  std::map<std::string, Tensor> out;
  std::vector<double>& gs = gradient_slot(out, "e:" + edge[0], ts).data();
  std::vector<double>& gr = gradient_slot(out, "r:" + edge[1], tr).data();
  std::vector<double>& go = gradient_slot(out, "e:" + edge[2], to).data();

  switch (m.kind) {
    case ModelKind::TransE: {
      if (m.q == 1) {
        for (std::size_t i = 0; i < es.size(); ++i) {
          double u = es[i] + rp[i] - eo[i];
          double s = (u > 0.0) - (u < 0.0);
          gs[i] -= s;
          gr[i] -= s;
          go[i] += s;
        }
        return out;
      }
      std::vector<double> u(es.size());
      double n = 0.0;
      for (std::size_t i = 0; i < es.size(); ++i) {
        u[i] = es[i] + rp[i] - eo[i];
        n += u[i] * u[i];
      }
      n = std::sqrt(n);
      if (n == 0.0) return out;
      for (std::size_t i = 0; i < es.size(); ++i) {
        gs[i] -= u[i] / n;
        gr[i] -= u[i] / n;
        go[i] += u[i] / n;
      }
      return out;
    }
    case ModelKind::TransH: {
      const Tensor& tw = hyperplane(m, edge[1]);
      const std::vector<double>& w = tw.data();
      std::vector<double>& gw = gradient_slot(out, "w:" + edge[1], tw).data();
      double sw = dot(es, w), ow = dot(eo, w);
      std::vector<double> v(es.size());
      for (std::size_t i = 0; i < es.size(); ++i)
        v[i] = (es[i] - sw * w[i]) + rp[i] - (eo[i] - ow * w[i]);
      double vw = dot(v, w);
      double aw = sw - ow;
      for (std::size_t i = 0; i < es.size(); ++i) {
        gs[i] += -2.0 * (v[i] - vw * w[i]);
        go[i] += 2.0 * (v[i] - vw * w[i]);
        gr[i] += -2.0 * v[i];
        gw[i] += 2.0 * vw * (es[i] - eo[i]) + 2.0 * aw * v[i];
      }
      return out;
    }
    case ModelKind::DistMult: {
      for (std::size_t i = 0; i < es.size(); ++i) {
        gs[i] += rp[i] * eo[i];
        gr[i] += es[i] * eo[i];
        go[i] += es[i] * rp[i];
      }
      return out;
    }
    case ModelKind::RESCAL: {
      std::size_t d = es.size();
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          gs[i] += rp[i * d + j] * eo[j];
          go[j] += es[i] * rp[i * d + j];
          gr[i * d + j] += es[i] * eo[j];
        }
      return out;
    }
    case ModelKind::ComplEx: {
      for (std::size_t i = 0; i < es.size(); i += 2) {
        double a = es[i], b = es[i + 1];
        double c = rp[i], d = rp[i + 1];
        double f = eo[i], g = eo[i + 1];
        gs[i] += c * f + d * g;
        gs[i + 1] += c * g - d * f;
        gr[i] += a * f + b * g;
        gr[i + 1] += a * g - b * f;
        go[i] += a * c - b * d;
        go[i + 1] += a * d + b * c;
      }
      return out;
    }
  }
  fail("unknown embedding model kind");
}

namespace {

void project_key(EmbeddingModel& m, const std::string& key) {
  if (key.rfind("e:", 0) == 0)
    project_entity(m.kind, m.entity_emb.at(key.substr(2)).data());
  else if (key.rfind("r:", 0) == 0)
    project_relation(m.kind, m.relation_emb.at(key.substr(2)).data());
  else
    project_hyperplane(m.aux.at(key).data());
}

void apply_gradient(EmbeddingModel& m, const std::map<std::string, Tensor>& grad,
                    double step) {
  for (const auto& [key, g] : grad) {
    std::vector<double>* param = nullptr;
    if (key.rfind("e:", 0) == 0)
      param = &m.entity_emb.at(key.substr(2)).data();
    else if (key.rfind("r:", 0) == 0)
      param = &m.relation_emb.at(key.substr(2)).data();
    else
      param = &m.aux.at(key).data();
    for (std::size_t i = 0; i < param->size(); ++i)
      (*param)[i] += step * g.data()[i];
  }
}

// Soft orthogonality step for one TransH relation: descend on
// (wᵀr)²/‖r‖² with weight 0.1 whenever it exceeds the 1e-3 threshold.
void transh_orthogonality_step(EmbeddingModel& m, const std::string& label,
                               double learning_rate) {
  std::vector<double>& r = m.relation_emb.at(label).data();
  std::vector<double>& w = m.aux.at("w:" + label).data();
  double wr = dot(w, r);
  double rr = dot(r, r);
  if (rr == 0.0) return;
  if (wr * wr / rr <= 1e-3 * 1e-3) return;
  double step = learning_rate * 0.1;
  for (std::size_t i = 0; i < r.size(); ++i) {
    double gw = 2.0 * wr * r[i] / rr;
    double gr = 2.0 * wr * w[i] / rr - 2.0 * wr * wr * r[i] / (rr * rr);
    w[i] -= step * gw;
    r[i] -= step * gr;
  }
}

}  // namespace

EmbeddingModel train(const Graph& g, ModelKind kind, const TrainConfig& cfg) {
  if (g.edges().empty()) fail("training needs a graph with at least one edge");
  if (cfg.epochs < 1) fail("epochs must be at least 1");
  if (!(cfg.learning_rate > 0.0)) fail("learning rate must be positive");
  if (cfg.dim < 1) fail("embedding dimension must be at least 1");
  if (cfg.p != 1 && cfg.p != 2) fail("norm exponent must be 1 or 2");

  EmbeddingModel m;
  m.kind = kind;
  m.d_e = cfg.dim;
  m.d_r = cfg.dim;
  m.seed = cfg.seed;
  m.q = kind == ModelKind::TransE ? cfg.p : 2;

  std::mt19937_64 rng(cfg.seed);
  double bound = 6.0 / std::sqrt(static_cast<double>(cfg.dim));
  auto uniform = [&rng, bound] {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return -bound + 2.0 * bound * u;
  };
  auto random_tensor = [&uniform](std::vector<std::size_t> dims) {
    Tensor t = Tensor::zeros(std::move(dims));
    for (double& x : t.data()) x = uniform();
    return t;
  };

  std::size_t ent_len = kind == ModelKind::ComplEx ? 2 * cfg.dim : cfg.dim;
  for (const std::string& node : g.node_strings()) {
    m.entity_emb.emplace(node, random_tensor({ent_len}));
    project_entity(kind, m.entity_emb.at(node).data());
  }
  for (const std::string& label : g.label_strings()) {
    Tensor r = kind == ModelKind::RESCAL ? random_tensor({cfg.dim, cfg.dim})
                                         : random_tensor({ent_len});
    project_relation(kind, r.data());
    m.relation_emb.emplace(label, std::move(r));
  }
  if (kind == ModelKind::TransH)
    for (const std::string& label : g.label_strings()) {
      Tensor w = random_tensor({cfg.dim});
      project_hyperplane(w.data());
      m.aux.emplace("w:" + label, std::move(w));
    }

  const std::vector<TermId>& nodes = g.nodes();
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (const Triple& pos : g.edges()) {
      for (std::size_t t = 0; t < cfg.negatives_per_positive; ++t) {
        bool corrupt_subject = (rng() % 2) == 0;
        std::optional<TermId> found;
        for (int attempt = 0; attempt < 100 && !found; ++attempt) {
          TermId cand = nodes[rng() % nodes.size()];
          Triple corrupted = corrupt_subject ? Triple{cand, pos.p, pos.o}
                                             : Triple{pos.s, pos.p, cand};
          if (!g.has_edge(corrupted)) found = cand;
        }
        if (!found) continue;

        std::array<std::string, 3> pe{g.str(pos.s), g.str(pos.p), g.str(pos.o)};
        std::array<std::string, 3> ne = pe;
        ne[corrupt_subject ? 0 : 2] = g.str(*found);

        if (cfg.margin - score(m, pe) + score(m, ne) <= 0.0) continue;
        std::map<std::string, Tensor> gp = score_gradient(m, pe);
        std::map<std::string, Tensor> gn = score_gradient(m, ne);
        apply_gradient(m, gp, cfg.learning_rate);
        apply_gradient(m, gn, -cfg.learning_rate);
        if (kind == ModelKind::TransH)
          transh_orthogonality_step(m, pe[1], cfg.learning_rate);
        for (const auto& [key, unused] : gp) project_key(m, key);
        for (const auto& [key, unused] : gn) project_key(m, key);
        if (kind == ModelKind::TransH) project_key(m, "r:" + pe[1]);
      }
    }
  }
  return m;
}

std::vector<std::pair<std::string, double>> predict(const EmbeddingModel& m,
                                                    const std::string& s,
                                                    const std::string& p,
                                                    std::size_t k) {
  entity(m, s);
  relation(m, p);
  std::vector<std::pair<std::string, double>> ranked;
  ranked.reserve(m.entity_emb.size());
  for (const auto& [name, unused] : m.entity_emb)
    ranked.emplace_back(name, score(m, {s, p, name}));
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

std::string to_model_tsv(const EmbeddingModel& m) {
  std::string out = "H\t";
  out += to_string(m.kind);
  out += '\t';
  out += std::to_string(m.d_e);
  out += '\t';
  out += std::to_string(m.d_r);
  out += '\t';
  out += std::to_string(m.seed);
  out += '\n';
  if (m.kind == ModelKind::TransE) out += "AUX\tq\t" + std::to_string(m.q) + "\n";
  auto rows = [&out](std::string_view tag, const std::map<std::string, Tensor>& map) {
    for (const auto& [name, t] : map) {
      out += tag;
      out += '\t';
      out += name;
      out += '\t';
      for (std::size_t i = 0; i < t.data().size(); ++i) {
        if (i) out += ' ';
        out += format_double(t.data()[i]);
      }
      out += '\n';
    }
  };
  rows("AUX", m.aux);
  rows("E", m.entity_emb);
  rows("R", m.relation_emb);
  return out;
}

EmbeddingModel parse_model_tsv(std::string_view text) {
  EmbeddingModel m;
  bool seen_header = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(
        start, nl == std::string_view::npos ? text.size() - start : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (line.empty()) continue;
    std::string where = "model line " + std::to_string(line_no);

    std::vector<std::string_view> fields;
    std::size_t f = 0;
    while (true) {
      std::size_t tab = line.find('\t', f);
      if (tab == std::string_view::npos) {
        fields.push_back(line.substr(f));
        break;
      }
      fields.push_back(line.substr(f, tab - f));
      f = tab + 1;
    }

    if (!seen_header) {
      if (fields.size() != 5 || fields[0] != "H")
        fail(where + ": expected header H<TAB>kind<TAB>d_e<TAB>d_r<TAB>seed");
      m.kind = parse_model_kind(fields[1]);
      m.d_e = parse_uint(fields[2], where);
      m.d_r = parse_uint(fields[3], where);
      m.seed = parse_uint(fields[4], where);
      if (m.d_e < 1 || m.d_r < 1) fail(where + ": dimensions must be positive");
      seen_header = true;
      continue;
    }
    if (fields.size() != 3)
      fail(where + ": expected row<TAB>name<TAB>values");

    std::string name(fields[1]);
    std::vector<double> values;
    std::size_t v = 0;
    std::string_view payload = fields[2];
    while (v < payload.size()) {
      std::size_t sp = payload.find(' ', v);
      std::string_view tok =
          payload.substr(v, sp == std::string_view::npos ? payload.size() - v : sp - v);
      if (!tok.empty()) values.push_back(parse_double(tok, where));
      v = sp == std::string_view::npos ? payload.size() : sp + 1;
    }

    auto expect = [&](std::size_t want, const char* what) {
      if (values.size() != want)
        fail(where + ": " + what + " '" + name + "' has " +
             std::to_string(values.size()) + " values, expected " +
             std::to_string(want));
    };

    if (fields[0] == "E") {
      std::size_t want = m.kind == ModelKind::ComplEx ? 2 * m.d_e : m.d_e;
      expect(want, "entity vector for");
      if (!m.entity_emb.emplace(name, Tensor::vector(std::move(values))).second)
        fail(where + ": duplicate entity row for '" + name + "'");
    } else if (fields[0] == "R") {
      if (m.kind == ModelKind::RESCAL) {
        expect(m.d_e * m.d_e, "relation matrix for");
        if (!m.relation_emb
                 .emplace(name, Tensor({m.d_e, m.d_e}, std::move(values)))
                 .second)
          fail(where + ": duplicate relation row for '" + name + "'");
      } else {
        std::size_t want = m.kind == ModelKind::ComplEx ? 2 * m.d_r : m.d_r;
        expect(want, "relation vector for");
        if (!m.relation_emb.emplace(name, Tensor::vector(std::move(values))).second)
          fail(where + ": duplicate relation row for '" + name + "'");
      }
    } else if (fields[0] == "AUX") {
      if (name == "q") {
        expect(1, "norm exponent");
        if (values[0] != 1.0 && values[0] != 2.0)
          fail(where + ": norm exponent must be 1 or 2");
        m.q = static_cast<int>(values[0]);
      } else if (name.rfind("w:", 0) == 0) {
        expect(m.d_r, "hyperplane vector for");
        if (!m.aux.emplace(name, Tensor::vector(std::move(values))).second)
          fail(where + ": duplicate aux row for '" + name + "'");
      } else {
        fail(where + ": unknown aux row '" + name + "'");
      }
    } else {
      fail(where + ": unknown row type '" + std::string(fields[0]) + "'");
    }
  }
  if (!seen_header) fail("model file is empty");
  if (m.kind == ModelKind::TransH)
    for (const auto& [label, unused] : m.relation_emb)
      if (!m.aux.count("w:" + label))
        fail("model is missing a hyperplane vector for label '" + label + "'");
  return m;
}

}  // namespace kg
