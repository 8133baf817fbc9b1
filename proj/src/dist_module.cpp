#include "gtsing/dist_module.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace gtsing {

// ---------------------------------------------------------------------------
// Labels and vectors

std::string format_label(const DistLabel& label) {
  std::ostringstream os;
  os << "I=";
  bool first = true;
  for (const auto& [r, t] : label.pairs) {
    if (!first) os << ",";
    first = false;
    if (r < 10 && t < 10)
      os << r << t;
    else
      os << r << "_" << t;
  }
  for (const auto& [id, off] : label.shift.entries()) {
    const VarIndex v = VarIndex::from_id(id);
    os << ";off=" << v.row << "," << v.col << ":" << (off > 0 ? "+" : "") << off;
  }
  return os.str();
}

DistLabel parse_label(const std::string& text) {
  DistLabel label;
  std::vector<Shift::Entry> entries;
  std::stringstream in(text);
  std::string field;
  bool saw_pairs = false;
  while (std::getline(in, field, ';')) {
    const auto b = field.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    field = field.substr(b, field.find_last_not_of(" \t") - b + 1);
    if (field.rfind("I=", 0) == 0) {
      saw_pairs = true;
      std::stringstream ps(field.substr(2));
      std::string tok;
      while (std::getline(ps, tok, ',')) {
        if (tok.empty()) continue;
        int r = 0;
        int t = 0;
        const auto us = tok.find('_');
        if (us != std::string::npos) {
          r = std::stoi(tok.substr(0, us));
          t = std::stoi(tok.substr(us + 1));
        } else if (tok.size() == 2 && std::isdigit(static_cast<unsigned char>(tok[0])) &&
                   std::isdigit(static_cast<unsigned char>(tok[1]))) {
          r = tok[0] - '0';
          t = tok[1] - '0';
        } else {
          throw std::invalid_argument("bad pair in label: " + tok);
        }
        if (r == t || r < 1 || t < 1) throw std::invalid_argument("bad pair in label: " + tok);
        label.pairs.emplace_back(std::min(r, t), std::max(r, t));
      }
    } else if (field.rfind("off=", 0) == 0) {
      const std::string spec = field.substr(4);
      const auto comma = spec.find(',');
      const auto colon = spec.find(':');
      if (comma == std::string::npos || colon == std::string::npos || comma > colon)
        throw std::invalid_argument("bad offset in label: " + field);
      try {
        const int k = std::stoi(spec.substr(0, comma));
        const int i = std::stoi(spec.substr(comma + 1, colon - comma - 1));
        const int m = std::stoi(spec.substr(colon + 1));
        if (k < 1 || i < 1 || i > k) throw std::invalid_argument(field);
        entries.emplace_back(VarIndex{k, i}.id(), m);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad offset in label: " + field);
      }
    } else {
      throw std::invalid_argument("unknown label field: " + field);
    }
  }
  if (!saw_pairs) throw std::invalid_argument("label needs an I= field");
  std::sort(label.pairs.begin(), label.pairs.end());
  if (std::adjacent_find(label.pairs.begin(), label.pairs.end()) != label.pairs.end())
    throw std::invalid_argument("repeated pair in label");
  label.shift = Shift::from_entries(std::move(entries));
  return label;
}

Rational DistVector::coefficient(const DistLabel& label) const {
  auto it = coeffs_.find(label);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void DistVector::add(const DistLabel& label, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(label, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

DistVector& DistVector::operator+=(const DistVector& other) {
  for (const auto& [l, c] : other.coeffs_) add(l, c);
  return *this;
}

DistVector& DistVector::operator-=(const DistVector& other) {
  for (const auto& [l, c] : other.coeffs_) add(l, -c);
  return *this;
}

DistVector& DistVector::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [l, v] : coeffs_) v *= c;
  return *this;
}

std::string DistVector::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [l, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    os << to_string(c) << "*D[" << format_label(l) << "]";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Context

namespace {

int permutation_sign(const std::vector<int>& images) {
  int sign = 1;
  std::vector<bool> seen(images.size(), false);
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images[j] - 1)) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

}  // namespace

void ModuleContext::init_group() {
  const int p = cluster_.p();
  std::vector<int> images(static_cast<std::size_t>(p));
  std::iota(images.begin(), images.end(), 1);
  group_.clear();
  if (p == 0) {
    group_.push_back({{}, 1, RowPermutation::identity(n_)});
    return;
  }
  do {
    group_.push_back({images, permutation_sign(images), cluster_.embed(images)});
  } while (std::next_permutation(images.begin(), images.end()));
}

ModuleContext ModuleContext::singular(const SingularSpec& spec, Extraction rule) {
  ModuleContext ctx;
  ctx.rule_ = rule;
  ctx.n_ = spec.n;
  ctx.base_ = spec.base;
  ctx.cluster_ = cluster_action(spec);
  ctx.pairs_ = z_pairs(spec.p());
  ctx.vandermonde_ = vandermonde_poly(ctx.cluster_);
  ctx.init_group();
  ctx.init_extraction();
  ctx.phi_ = std::make_shared<const GtHomomorphism>(spec.n);
  return ctx;
}

ModuleContext ModuleContext::generic(const TableauPoint& point) {
  if (!std::holds_alternative<Generic>(classify_point(point)))
    throw std::invalid_argument("generic context needs a generic point");
  ModuleContext ctx;
  ctx.n_ = point.rank();
  ctx.base_ = point;
  ctx.cluster_ = ClusterAction{point.rank(), 0, {}};
  ctx.init_group();
  ctx.init_extraction();
  ctx.phi_ = std::make_shared<const GtHomomorphism>(point.rank());
  return ctx;
}

PairSubset ModuleContext::subset_of(std::size_t mask) const {
  PairSubset out;
  for (std::size_t q = 0; q < pairs_.size(); ++q)
    if (mask & (std::size_t{1} << q)) out.push_back(pairs_[q]);
  return out;
}

void ModuleContext::init_extraction() {
  const std::size_t count = std::size_t{1} << pairs_.size();
  const std::size_t full = count - 1;
  derivative_symbols_.assign(count, Polynomial());
  pairing_symbols_.assign(count, Polynomial());
  for (std::size_t j = 0; j < count; ++j)
    derivative_symbols_[j] = z(subset_of(j)) * power(Rational(1, 2), static_cast<unsigned>(std::popcount(j)));
  // ev_o d_T(z_I F) = sum_K (d_K z_I)(o) ev_o d_{T-K} F; only |K| = |I| survives.
  for (std::size_t i = 0; i < count; ++i) {
    const Polynomial zi = z(subset_of(i));
    for (std::size_t k = 0; k < count; ++k) {
      if (std::popcount(k) != std::popcount(i)) continue;
      Polynomial d = zi;
      for (std::size_t q = 0; q < pairs_.size(); ++q)
        if (k & (std::size_t{1} << q)) d = z_derive(d, pairs_[q], *this);
      const Rational c = d.constant_term();
      if (c != 0) pairing_symbols_[i] += derivative_symbols_[full & ~k] * c;
    }
  }
}

Polynomial ModuleContext::z(const ClusterPair& pair) const {
  return Polynomial::variable(cluster_var(pair.first)) - Polynomial::variable(cluster_var(pair.second));
}

Polynomial ModuleContext::z(const PairSubset& subset) const {
  Polynomial r(1);
  for (const auto& pr : subset) r = r * z(pr);
  return r;
}

// ---------------------------------------------------------------------------
// Alternating polynomials

Polynomial vandermonde_poly(const ClusterAction& cl) {
  Polynomial v(1);
  for (const auto& [r, t] : z_pairs(cl.p()))
    v = v * (Polynomial::variable({cl.row, cl.cluster[r - 1]}) - Polynomial::variable({cl.row, cl.cluster[t - 1]}));
  return v;
}

std::optional<Polynomial> alternating_quotient(const Polynomial& f, const ClusterAction& cl) {
  for (int r = 1; r < cl.p(); ++r)
    if (!(f.permute(cl.transposition(r, r + 1)) == -f)) return std::nullopt;
  Polynomial q = f;
  for (const auto& [r, t] : z_pairs(cl.p())) {
    const auto [factor, scalar] =
        LinearFactor::difference({cl.row, cl.cluster[r - 1]}, {cl.row, cl.cluster[t - 1]});
    auto next = divide_exact(q, factor);
    if (!next) throw std::logic_error("alternating polynomial not divisible by a Vandermonde factor");
    q = *next * Rational(1 / scalar);
  }
  for (int r = 1; r < cl.p(); ++r)
    if (!(q.permute(cl.transposition(r, r + 1)) == q))
      throw std::logic_error("Vandermonde quotient is not symmetric");
  return q;
}

RationalFunction z_derive(const RationalFunction& a, const ClusterPair& pair, const ModuleContext& ctx) {
  RationalFunction d = a.derive(ctx.cluster_var(pair.first)) - a.derive(ctx.cluster_var(pair.second));
  return d * RationalFunction(Rational(1, 2));
}

Polynomial z_derive(const Polynomial& a, const ClusterPair& pair, const ModuleContext& ctx) {
  return (a.derive(ctx.cluster_var(pair.first)) - a.derive(ctx.cluster_var(pair.second))) * Rational(1, 2);
}

// ---------------------------------------------------------------------------
// Canonical labels

namespace {

struct LabelImage {
  PairSubset pairs;
  Shift shift;
  int sign = 1;
};

LabelImage image_under(const ClusterPermutation& tau, const PairSubset& subset, const Shift& m) {
  LabelImage img;
  int reversals = 0;
  for (const auto& [r, t] : subset) {
    int a = tau.images[r - 1];
    int b = tau.images[t - 1];
    if (a > b) {
      std::swap(a, b);
      ++reversals;
    }
    img.pairs.emplace_back(a, b);
  }
  std::sort(img.pairs.begin(), img.pairs.end());
  img.shift = conjugate_shift(tau.embedded, m);
  img.sign = tau.sign * ((reversals % 2) ? -1 : 1);
  return img;
}

std::vector<int> cluster_offsets(const Shift& m, const ModuleContext& ctx) {
  std::vector<int> offs;
  for (int r = 1; r <= ctx.p(); ++r) offs.push_back(m.offset(ctx.cluster_var(r)));
  return offs;
}

bool label_key_less(const LabelImage& a, const LabelImage& b, const ModuleContext& ctx) {
  const auto oa = cluster_offsets(a.shift, ctx);
  const auto ob = cluster_offsets(b.shift, ctx);
  if (oa != ob) return oa < ob;
  if (a.pairs != b.pairs) return a.pairs < b.pairs;
  return a.shift < b.shift;
}

void validate_subset(const PairSubset& subset, const ModuleContext& ctx) {
  for (const auto& [r, t] : subset)
    if (r < 1 || t <= r || t > ctx.p())
      throw std::invalid_argument("pair (" + std::to_string(r) + "," + std::to_string(t) + ") is not a cluster pair");
  PairSubset sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("repeated pair in subset");
}

}  // namespace

std::optional<SignedLabel> canonical_label(const PairSubset& subset, const Shift& m, const ModuleContext& ctx) {
  validate_subset(subset, ctx);
  PairSubset sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  std::optional<LabelImage> best;
  for (const auto& tau : ctx.group()) {
    LabelImage img = image_under(tau, sorted, m);
    if (img.pairs == sorted && img.shift == m && img.sign < 0) return std::nullopt;
    if (!best || label_key_less(img, *best, ctx)) best = std::move(img);
  }
  return SignedLabel{{best->pairs, best->shift}, best->sign};
}

bool is_canonical(const DistLabel& label, const ModuleContext& ctx) {
  auto c = canonical_label(label.pairs, label.shift, ctx);
  return c && c->label == label && c->sign == 1;
}

std::vector<DistLabel> enumerate_labels(const std::vector<VarIndex>& positions, int window,
                                        const ModuleContext& ctx) {
  std::set<DistLabel> out;
  const std::size_t npairs = ctx.pairs().size();
  std::vector<int> offs(positions.size(), -window);
  while (true) {
    std::vector<Shift::Entry> entries;
    for (std::size_t q = 0; q < positions.size(); ++q) entries.emplace_back(positions[q].id(), offs[q]);
    const Shift m = Shift::from_entries(std::move(entries));
    for (std::size_t mask = 0; mask < (std::size_t{1} << npairs); ++mask) {
      PairSubset subset;
      for (std::size_t q = 0; q < npairs; ++q)
        if (mask & (std::size_t{1} << q)) subset.push_back(ctx.pairs()[q]);
      if (auto c = canonical_label(subset, m, ctx)) out.insert(c->label);
    }
    std::size_t q = 0;
    while (q < offs.size() && offs[q] == window) offs[q++] = -window;
    if (q == offs.size()) break;
    ++offs[q];
  }
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// Symmetrized elements and the action

namespace {

RationalFunction inverse_vandermonde(const ModuleContext& ctx) {
  RationalFunction inv(1);
  for (const auto& pr : ctx.pairs()) inv *= RationalFunction::inverse_of_linear(ctx.z(pr));
  return inv;
}

// a[J] = d_J g (o) for every subset bitmask J of T.
Polynomial restrict_poly(const Polynomial& f, const Shift& s, const ModuleContext& ctx);
RationalFunction restrict_rf(const RationalFunction& f, const Shift& s, const ModuleContext& ctx);

// Every denominator factor of h that vanishes at o must be a bare cluster
// difference, so that z_T h is holomorphic there.
void require_vandermonde_poles(const RationalFunction& h, const ModuleContext& ctx) {
  std::vector<LinearFactor> allowed;
  for (const auto& [r, t] : ctx.pairs())
    allowed.push_back(LinearFactor::difference(ctx.cluster_var(r), ctx.cluster_var(t)).first);
  for (const auto& [f, e] : h.denominator()) {
    if (f.evaluate(ctx.base().point) != 0) continue;
    if (std::find(allowed.begin(), allowed.end(), f) == allowed.end())
      throw SingularityExceeded("z_T h is singular at the base point: factor " + f.str());
  }
}

std::vector<Rational> subset_derivatives(const RationalFunction& g, const ModuleContext& ctx) {
  const auto& pairs = ctx.pairs();
  std::vector<Rational> out(std::size_t{1} << pairs.size(), Rational(0));
  std::function<void(std::size_t, std::size_t, const RationalFunction&)> rec =
      [&](std::size_t j, std::size_t mask, const RationalFunction& f) {
        if (f.is_zero()) return;
        if (j == pairs.size()) {
          auto v = f.evaluate(ctx.base().point);
          if (!v) throw SingularityExceeded("derivative singular at the base point: " + f.str());
          out[mask] = *v;
          return;
        }
        rec(j + 1, mask, f);
        rec(j + 1, mask | (std::size_t{1} << j), z_derive(f, pairs[j], ctx));
      };
  rec(0, 0, g);
  return out;
}

// Coefficients b with sum_I b_I D_{I,s} equal to the S_p-orbit sum of the
// point functional F -> sum_J a_J ev_o d_{T-J}(F o s). Since L is invariant,
// D_{I,s} is the plain orbit sum of the symbol of ev_o d_T(z_I .) at s, and
// two orbit sums agree once the symbols agree after averaging over the
// stabilizer of s. Free unknowns are set to zero.
std::vector<Rational> dual_coefficients(const std::vector<Rational>& a, const Shift& shift, const ModuleContext& ctx) {
  const std::size_t count = a.size();
  const std::size_t full = count - 1;
  std::vector<const ClusterPermutation*> stab;
  for (const auto& rho : ctx.group())
    if (conjugate_shift(rho.embedded, shift) == shift) stab.push_back(&rho);
  auto average = [&](const Polynomial& f) {
    Polynomial out;
    for (const auto* rho : stab) out += f.permute(rho->embedded);
    return out;
  };
  Polynomial target;
  for (std::size_t j = 0; j < count; ++j)
    if (a[j] != 0) target += ctx.derivative_symbol(full & ~j) * a[j];
  target = average(target);
  std::vector<Rational> b(count, Rational(0));
  if (target.is_zero()) return b;
  std::vector<Polynomial> cols(count);
  std::vector<Monomial> rows;
  for (std::size_t i = 0; i < count; ++i) {
    cols[i] = average(ctx.pairing_symbol(i));
    for (const auto& [mono, c] : cols[i].terms()) rows.push_back(mono);
  }
  for (const auto& [mono, c] : target.terms()) rows.push_back(mono);
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  auto coeff = [](const Polynomial& f, const Monomial& m) {
    auto it = f.terms().find(m);
    return it == f.terms().end() ? Rational(0) : it->second;
  };
  std::vector<std::vector<Rational>> m(rows.size(), std::vector<Rational>(count + 1));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < count; ++c) m[r][c] = coeff(cols[c], rows[r]);
    m[r][count] = coeff(target, rows[r]);
  }
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < count && rank < rows.size(); ++c) {
    std::size_t r = rank;
    while (r < rows.size() && m[r][c] == 0) ++r;
    if (r == rows.size()) continue;
    std::swap(m[r], m[rank]);
    const Rational inv = 1 / m[rank][c];
    for (auto& v : m[rank]) v *= inv;
    for (std::size_t o = 0; o < rows.size(); ++o) {
      if (o == rank || m[o][c] == 0) continue;
      const Rational f = m[o][c];
      for (std::size_t q = c; q <= count; ++q) m[o][q] -= f * m[rank][q];
    }
    pivots.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < rows.size(); ++r)
    if (m[r][count] != 0)
      throw ExtractionError("point functional at shift " + format_label({{}, shift}) +
                            " is not a combination of basis distributions");
  for (std::size_t r = 0; r < rank; ++r) b[pivots[r]] = m[r][count];
  return b;
}

}  // namespace

SkewElement build_symmetrized_element(const PairSubset& subset, const Shift& m, const ModuleContext& ctx) {
  validate_subset(subset, ctx);
  const RationalFunction inv = inverse_vandermonde(ctx);
  const Polynomial zi = ctx.z(subset);
  SkewElement b;
  for (const auto& tau : ctx.group()) {
    RationalFunction coeff(zi.permute(tau.embedded) * Rational(tau.sign));
    b.add_term(conjugate_shift(tau.embedded, m), coeff * inv);
  }
  return b;
}

DistVector act_element(const SkewElement& r, const DistVector& d, const ModuleContext& ctx) {
  DistVector result;
  const Rational inv_order(1, static_cast<long>(ctx.group_order()));
  const RationalFunction vander(ctx.vandermonde());
  for (const auto& [raw, coeff] : d.coeffs()) {
    auto canon = canonical_label(raw.pairs, raw.shift, ctx);
    if (!canon) continue;
    const Rational c = coeff * canon->sign;
    const DistLabel& label = canon->label;
    const SkewElement composed = compose(build_symmetrized_element(label.pairs, label.shift, ctx), r);
    if (ctx.p() >= 2) {
      if (!is_invariant(composed, ctx.cluster()))
        throw SingularityExceeded("composition is not cluster-invariant for label " + format_label(label));
      const unsigned order = cluster_singularity_order(composed, ctx.cluster());
      if (order > 1)
        throw SingularityExceeded("cluster singularity of order " + std::to_string(order) + " exceeds the Vandermonde for label " +
                                  format_label(label) + ": " + composed.str());
    }
    for (const auto& [shift, h] : composed.terms()) {
      require_vandermonde_poles(h, ctx);
      // only cluster directions are differentiated
      const RationalFunction g = vander * restrict_rf(h, Shift{}, ctx);
      const std::vector<Rational> a = subset_derivatives(g, ctx);
      const std::vector<Rational> b =
          ctx.extraction_rule() == ModuleContext::Extraction::literal ? a : dual_coefficients(a, shift, ctx);
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] == 0) continue;
        if (auto target = canonical_label(ctx.subset_of(i), shift, ctx))
          result.add(target->label, c * b[i] * inv_order * target->sign);
      }
    }
  }
  return result;
}

DistVector act(const GeneratorWord& w, const DistVector& d, const ModuleContext& ctx) {
  for (const auto& g : w) g.validate(ctx.rank());
  return act_element(ctx.phi().word(w), d, ctx);
}

DistVector act(const GeneratorSymbol& g, const DistVector& d, const ModuleContext& ctx) {
  return act(GeneratorWord{g}, d, ctx);
}

// ---------------------------------------------------------------------------
// Oracle side

unsigned LocalDistribution::order() const {
  unsigned o = 0;
  for (const auto& [c, alpha] : terms) o = std::max(o, alpha.degree());
  return o;
}

Rational LocalDistribution::apply(const Polynomial& f) const {
  Rational sum = 0;
  for (const auto& [c, alpha] : terms) {
    Polynomial g = f;
    for (const auto& [id, e] : alpha.powers())
      for (unsigned q = 0; q < e && !g.is_zero(); ++q) g = g.derive_id(id);
    sum += c * g.evaluate(base.point);
  }
  return sum;
}

std::vector<LocalDistribution> dist_as_local_distributions(const DistLabel& label, const ModuleContext& ctx) {
  if (!canonical_label(label.pairs, label.shift, ctx))
    throw std::invalid_argument("label " + format_label(label) + " denotes the zero distribution");
  std::map<Shift, std::map<Monomial, Rational>> by_point;
  const auto& pairs = ctx.pairs();
  const Polynomial zi = ctx.z(label.pairs);
  for (const auto& tau : ctx.group()) {
    const Polynomial weight = zi.permute(tau.embedded) * Rational(tau.sign);
    const Shift at = conjugate_shift(tau.embedded, label.shift);
    // d_T (weight * G) at o = sum_K (d_K weight)(o) * (d_{T\K} G)(o); the
    // operator d_J has symbol 2^{-|J|} z_J in the derivative variables.
    for (std::size_t mask = 0; mask < (std::size_t{1} << pairs.size()); ++mask) {
      Polynomial wk = weight;
      Polynomial symbol(1);
      for (std::size_t q = 0; q < pairs.size(); ++q) {
        if (mask & (std::size_t{1} << q))
          wk = z_derive(wk, pairs[q], ctx);
        else
          symbol = symbol * ctx.z(pairs[q]) * Rational(1, 2);
      }
      const Rational w0 = wk.evaluate(ctx.base().point);
      if (w0 == 0) continue;
      auto& terms = by_point[at];
      for (const auto& [mono, c] : symbol.terms()) {
        auto& slot = terms[mono];
        slot += w0 * c;
      }
    }
  }
  std::vector<LocalDistribution> out;
  for (auto& [at, terms] : by_point) {
    LocalDistribution ld{apply_shift(ctx.base(), at.inverse()), {}};
    for (auto& [mono, c] : terms)
      if (c != 0) ld.terms.emplace_back(c, mono);
    if (!ld.terms.empty()) out.push_back(std::move(ld));
  }
  return out;
}

namespace {

// Only cluster directions are differentiated, so every test function is
// restricted to the cluster coordinates, the others frozen at o - s.
Polynomial restrict_poly(const Polynomial& f, const Shift& s, const ModuleContext& ctx) {
  const PointAssignment& o = ctx.base().point;
  std::vector<bool> is_cluster(static_cast<std::size_t>(variable_count(ctx.rank())), false);
  std::vector<Shift::Entry> cluster_shift;
  for (int r = 1; r <= ctx.p(); ++r) {
    const int id = ctx.cluster_var(r).id();
    is_cluster[static_cast<std::size_t>(id)] = true;
    if (const int off = s.offset_id(id)) cluster_shift.emplace_back(id, off);
  }
  Polynomial out;
  for (const auto& [mono, c] : f.terms()) {
    Rational coeff = c;
    std::vector<Monomial::Power> kept;
    for (const auto& [id, e] : mono.powers()) {
      if (is_cluster[static_cast<std::size_t>(id)])
        kept.emplace_back(id, e);
      else
        coeff *= power(o.at_id(id) - s.offset_id(id), e);
    }
    if (coeff != 0) out += Polynomial::term(Monomial::from_powers(std::move(kept)), coeff);
  }
  return out.shift_subst(Shift::from_entries(std::move(cluster_shift)));
}

RationalFunction restrict_rf(const RationalFunction& f, const Shift& s, const ModuleContext& ctx) {
  if (f.is_polynomial()) return restrict_poly(f.scaled_numerator(), s, ctx);
  RationalFunction out(restrict_poly(f.scaled_numerator(), s, ctx));
  for (const auto& [factor, mult] : f.denominator()) {
    const Polynomial lp = restrict_poly(factor.to_polynomial(), s, ctx);
    RationalFunction inv;
    if (lp.is_constant()) {
      if (lp.is_zero()) throw PoleError("test function has a pole on the cluster subspace: " + factor.str());
      inv = RationalFunction(1 / lp.constant_term());
    } else {
      inv = RationalFunction::inverse_of_linear(lp);
    }
    for (unsigned q = 0; q < mult; ++q) out *= inv;
  }
  return out;
}

// ev_o d_T( sum_p weight_p * F_p ) for fixed rational weights and varying
// polynomial multipliers F_p. Everything is put over the common denominator
// once; per call the numerator is divided by the factors vanishing at o and
// the rest is handled by Leibniz against precomputed derivatives of the
// remaining reciprocal.
class PieceOracle {
 public:
  PieceOracle(const std::vector<RationalFunction>& weights, const ModuleContext& ctx) : ctx_(ctx) {
    RationalFunction::Denominator den;
    for (const auto& w : weights)
      for (const auto& [f, m] : w.denominator()) den[f] = std::max(den[f], m);
    for (const auto& w : weights) {
      Polynomial num = w.scaled_numerator();
      for (const auto& [f, m] : den) {
        auto it = w.denominator().find(f);
        const unsigned have = it == w.denominator().end() ? 0 : it->second;
        if (m > have) num = num * f.to_polynomial().pow(m - have);
      }
      numerators_.push_back(std::move(num));
    }
    RationalFunction::Denominator rest;
    for (const auto& [f, m] : den) {
      if (f.evaluate(ctx.base().point) == 0)
        vanishing_.emplace_back(f, m);
      else
        rest[f] = m;
    }
    const RationalFunction q(Rational(1), Polynomial(1), rest);
    const std::size_t count = std::size_t{1} << ctx.pairs().size();
    reciprocal_.assign(count, Rational(0));
    for (std::size_t j = 0; j < count; ++j) {
      RationalFunction d = q;
      for (std::size_t k = 0; k < ctx.pairs().size(); ++k)
        if (j & (std::size_t{1} << k)) d = z_derive(d, ctx.pairs()[k], ctx);
      reciprocal_[j] = *d.evaluate(ctx.base().point);
    }
  }

  Rational apply(const std::vector<Polynomial>& multipliers) const {
    Polynomial n;
    for (std::size_t p = 0; p < numerators_.size(); ++p)
      if (!multipliers[p].is_zero()) n += numerators_[p] * multipliers[p];
    if (n.is_zero()) return 0;
    for (const auto& [f, m] : vanishing_)
      for (unsigned q = 0; q < m; ++q) {
        auto d = divide_exact(n, f);
        if (!d) throw PoleError("symmetrized test function singular at the base point along " + f.str());
        n = std::move(*d);
      }
    const auto& pairs = ctx_.pairs();
    const std::size_t full = (std::size_t{1} << pairs.size()) - 1;
    Rational sum = 0;
    std::function<void(std::size_t, std::size_t, const Polynomial&)> rec = [&](std::size_t j, std::size_t mask,
                                                                               const Polynomial& g) {
      if (g.is_zero()) return;
      if (j == pairs.size()) {
        const Rational r = reciprocal_[full & ~mask];
        if (r != 0) sum += g.evaluate(ctx_.base().point) * r;
        return;
      }
      rec(j + 1, mask, g);
      rec(j + 1, mask | (std::size_t{1} << j), z_derive(g, pairs[j], ctx_));
    };
    rec(0, 0, n);
    return sum;
  }

 private:
  const ModuleContext& ctx_;
  std::vector<Polynomial> numerators_;
  std::vector<std::pair<LinearFactor, unsigned>> vanishing_;
  std::vector<Rational> reciprocal_;
};

}  // namespace

Rational oracle_apply(const DistLabel& label, const RationalFunction& f, const ModuleContext& ctx) {
  validate_subset(label.pairs, ctx);
  const Polynomial zi = ctx.z(label.pairs);
  if (f.is_polynomial()) {
    const Polynomial fp = f.as_polynomial();
    Polynomial h;
    for (const auto& tau : ctx.group())
      h += zi.permute(tau.embedded) * Rational(tau.sign) *
           restrict_poly(fp, conjugate_shift(tau.embedded, label.shift), ctx);
    for (const auto& pr : ctx.pairs()) h = z_derive(h, pr, ctx);
    return h.evaluate(ctx.base().point);
  }
  std::vector<RationalFunction> weights;
  for (const auto& tau : ctx.group())
    weights.push_back(RationalFunction(zi.permute(tau.embedded) * Rational(tau.sign)) *
                      restrict_rf(f, conjugate_shift(tau.embedded, label.shift), ctx));
  return PieceOracle(weights, ctx).apply(std::vector<Polynomial>(weights.size(), Polynomial(1)));
}

Rational oracle_apply(const DistLabel& label, const SkewElement& r, const Polynomial& f, const ModuleContext& ctx) {
  validate_subset(label.pairs, ctx);
  const Polynomial zi = ctx.z(label.pairs);
  std::vector<RationalFunction> weights;
  std::vector<Polynomial> multipliers;
  for (const auto& tau : ctx.group()) {
    const Shift at = conjugate_shift(tau.embedded, label.shift);
    const RationalFunction weight(zi.permute(tau.embedded) * Rational(tau.sign));
    for (const auto& [m, coeff] : r.terms()) {
      weights.push_back(weight * restrict_rf(coeff, at, ctx));
      multipliers.push_back(restrict_poly(f, m + at, ctx));
    }
  }
  return PieceOracle(weights, ctx).apply(multipliers);
}

Rational oracle_apply(const DistVector& d, const RationalFunction& f, const ModuleContext& ctx) {
  Rational sum = 0;
  for (const auto& [label, c] : d.coeffs()) sum += c * oracle_apply(label, f, ctx);
  return sum;
}

std::vector<Monomial> monomials_up_to(int n, unsigned bound) {
  const int nvars = variable_count(n);
  std::vector<Monomial> out;
  std::vector<Monomial::Power> current;
  std::function<void(int, unsigned)> rec = [&](int id, unsigned remaining) {
    if (id == nvars) {
      out.push_back(Monomial::from_powers(current));
      return;
    }
    for (unsigned e = 0; e <= remaining; ++e) {
      if (e > 0) current.emplace_back(id, e);
      rec(id + 1, remaining - e);
      if (e > 0) current.pop_back();
    }
  };
  rec(0, bound);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    return a.degree() != b.degree() ? a.degree() < b.degree() : a < b;
  });
  return out;
}

std::vector<Shift> support_shifts(const DistVector& d, const ModuleContext& ctx) {
  std::set<Shift> pts;
  for (const auto& [label, c] : d.coeffs())
    for (const auto& tau : ctx.group()) pts.insert(conjugate_shift(tau.embedded, label.shift));
  return {pts.begin(), pts.end()};
}

unsigned conclusive_degree_bound(const std::vector<Shift>& support, const ModuleContext& ctx) {
  int diameter = 0;
  for (std::size_t a = 0; a < support.size(); ++a)
    for (std::size_t b = a + 1; b < support.size(); ++b) {
      const Shift diff = support[a] + support[b].inverse();
      for (const auto& [id, off] : diff.entries()) diameter = std::max(diameter, std::abs(off));
    }
  return static_cast<unsigned>(ctx.pairs().size()) + static_cast<unsigned>(diameter) + 1;
}

CrossCheckResult oracle_cross_check(const GeneratorWord& w, const DistLabel& label, unsigned degree_bound,
                                    const ModuleContext& ctx) {
  CrossCheckResult res;
  res.degree_bound = degree_bound;
  const DistVector source = DistVector::basis(label);
  res.expansion = act(w, source, ctx);
  std::vector<Shift> support = support_shifts(source, ctx);
  for (const auto& s : support_shifts(res.expansion, ctx)) support.push_back(s);
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  res.conclusive_bound = conclusive_degree_bound(support, ctx);
  // Shifted and restricted coefficients of Phi(w) do not depend on F.
  const SkewElement r = ctx.phi().word(w);
  const Polynomial zi = ctx.z(label.pairs);
  std::vector<Shift> totals;
  std::vector<RationalFunction> weights;
  for (const auto& tau : ctx.group()) {
    const Shift at = conjugate_shift(tau.embedded, label.shift);
    const RationalFunction w0(zi.permute(tau.embedded) * Rational(tau.sign));
    for (const auto& [m, coeff] : r.terms()) {
      totals.push_back(m + at);
      weights.push_back(w0 * restrict_rf(coeff, at, ctx));
    }
  }
  const PieceOracle direct(weights, ctx);
  std::vector<Polynomial> multipliers(totals.size());
  for (const auto& mono : monomials_up_to(ctx.rank(), degree_bound)) {
    const Polynomial f = Polynomial::term(mono, 1);
    const Rational lhs = oracle_apply(res.expansion, f, ctx);
    for (std::size_t q = 0; q < totals.size(); ++q) multipliers[q] = restrict_poly(f, totals[q], ctx);
    const Rational rhs = direct.apply(multipliers);
    ++res.monomials_checked;
    if (lhs != rhs) {
      res.ok = false;
      res.failure = "F=" + f.str() + ": expansion gives " + to_string(lhs) + ", direct action gives " + to_string(rhs);
      break;
    }
  }
  return res;
}

bool vanishes_as_distribution(const DistVector& d, unsigned degree_bound, const ModuleContext& ctx) {
  for (const auto& mono : monomials_up_to(ctx.rank(), degree_bound))
    if (oracle_apply(d, Polynomial::term(mono, 1), ctx) != 0) return false;
  return true;
}

ModuleAxiomResult verify_module_axiom(const GeneratorSymbol& a, const GeneratorSymbol& b, const DistVector& d,
                                      const ModuleContext& ctx) {
  ModuleAxiomResult res;
  DistVector lhs = act(a, act(b, d, ctx), ctx) - act(b, act(a, d, ctx), ctx);
  DistVector rhs;
  for (const auto& [c, unit] : bracket_of_units(a.matrix_unit(), b.matrix_unit()))
    rhs += Rational(c) * act(GeneratorSymbol::unit(unit.first, unit.second), d, ctx);
  res.defect = lhs - rhs;
  if (res.defect.is_zero()) {
    res.ok = res.syntactic = true;
    return res;
  }
  res.degree_bound = conclusive_degree_bound(support_shifts(res.defect, ctx), ctx);
  res.ok = vanishes_as_distribution(res.defect, res.degree_bound, ctx);
  return res;
}

// ---------------------------------------------------------------------------
// Cluster size two

P2Report p2_correspondence(const ModuleContext& ctx, unsigned degree_bound, int window) {
  if (ctx.p() != 2) throw std::invalid_argument("p2 correspondence needs a cluster of size two");
  P2Report rep;
  const ClusterPermutation& swap = ctx.group().at(1);
  const ClusterPair only{1, 2};
  const PairSubset full{only};
  const Polynomial z = ctx.z(only);
  const PointAssignment& o = ctx.base().point;
  const auto monos = monomials_up_to(ctx.rank(), degree_bound);

  std::vector<VarIndex> positions{ctx.cluster_var(1), ctx.cluster_var(2)};
  if (ctx.row() > 1) positions.push_back({ctx.row() - 1, 1});
  std::vector<Shift> shifts;
  {
    std::vector<int> offs(positions.size(), -window);
    while (true) {
      std::vector<Shift::Entry> e;
      for (std::size_t q = 0; q < positions.size(); ++q) e.emplace_back(positions[q].id(), offs[q]);
      shifts.push_back(Shift::from_entries(std::move(e)));
      std::size_t q = 0;
      while (q < offs.size() && offs[q] == window) offs[q++] = -window;
      if (q == offs.size()) break;
      ++offs[q];
    }
  }

  auto check = [&](std::string name, bool ok, std::string detail) {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  // D^1_s(F) = ev_o d_z (z (F(x-s) + F(x-tau s))),  D^2_s(F) = ev_o d_z (F(x-s) - F(x-tau s)).
  bool d1_ok = true;
  bool d2_ok = true;
  std::string d1_detail;
  std::string d2_detail;
  for (const auto& m : shifts) {
    const Shift tm = conjugate_shift(swap.embedded, m);
    for (const auto& mono : monos) {
      const Polynomial f = Polynomial::term(mono, 1);
      const Polynomial a = f.shift_subst(m);
      const Polynomial b = f.shift_subst(tm);
      const Rational d1 = z_derive(z * (a + b), only, ctx).evaluate(o);
      const Rational d2 = z_derive(a - b, only, ctx).evaluate(o);
      if (d1_ok && oracle_apply(DistLabel{full, m}, f, ctx) != d1) {
        d1_ok = false;
        d1_detail = "mismatch at " + format_label({full, m}) + ", F=" + f.str();
      }
      if (d2_ok && oracle_apply(DistLabel{{}, m}, f, ctx) != d2) {
        d2_ok = false;
        d2_detail = "mismatch at " + format_label({{}, m}) + ", F=" + f.str();
      }
    }
  }
  check("D1 equals L o (s + tau(s))", d1_ok, d1_ok ? std::to_string(shifts.size()) + " shifts" : d1_detail);
  check("D2 equals L o (s - tau(s))/z", d2_ok, d2_ok ? std::to_string(shifts.size()) + " shifts" : d2_detail);

  bool rel1 = true;
  bool rel2 = true;
  std::string rel_detail;
  for (const auto& m : shifts) {
    const Shift tm = conjugate_shift(swap.embedded, m);
    const auto a1 = canonical_label(full, m, ctx);
    const auto b1 = canonical_label(full, tm, ctx);
    if (!a1 || !b1 || !(a1->label == b1->label) || a1->sign != b1->sign) {
      rel1 = false;
      rel_detail = "D1 relation fails at " + format_label({full, m});
    }
    const auto a2 = canonical_label({}, m, ctx);
    const auto b2 = canonical_label({}, tm, ctx);
    if (tm == m) {
      if (a2) {
        rel2 = false;
        rel_detail = "D2 with symmetric shift is not zero at " + format_label({{}, m});
      }
    } else if (!a2 || !b2 || !(a2->label == b2->label) || a2->sign != -b2->sign) {
      rel2 = false;
      rel_detail = "D2 relation fails at " + format_label({{}, m});
    }
  }
  check("D1_{tau(s)} = D1_s", rel1, rel1 ? "" : rel_detail);
  check("D2_{tau(s)} = -D2_s", rel2, rel2 ? "" : rel_detail);

  bool ev_ok = true;
  for (const auto& mono : monos) {
    const Polynomial f = Polynomial::term(mono, 1);
    if (oracle_apply(DistLabel{full, {}}, f, ctx) != 2 * f.evaluate(o)) ev_ok = false;
  }
  const auto locals = dist_as_local_distributions(DistLabel{full, {}}, ctx);
  const bool single = locals.size() == 1 && locals[0].terms.size() == 1 && locals[0].terms[0].first == 2 &&
                      locals[0].terms[0].second.is_one() && locals[0].base == ctx.base();
  check("D1_id = 2 ev_o", ev_ok && single, single ? "single point, weight 2" : "local form differs");

  bool zero_ok = !canonical_label({}, {}, ctx).has_value();
  for (const auto& mono : monos)
    if (oracle_apply(DistLabel{{}, {}}, Polynomial::term(mono, 1), ctx) != 0) zero_ok = false;
  check("D2_id = 0", zero_ok, "");

  rep.notation = {
      {"D^1_s", "D[I=12;s]"},
      {"D^2_s", "D[I=;s]"},
      {"DT(v+z)", "D^2_{s'}(T(v)) with s'(v) = v+z"},
      {"D^{v-bar}(F)", "dF/dz_1 at o"},
  };
  rep.ok = std::all_of(rep.checks.begin(), rep.checks.end(), [](const P2Check& c) { return c.ok; });
  return rep;
}

}  // namespace gtsing
