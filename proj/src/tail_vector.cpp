#include "uodual/tail_vector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "uodual/error.hpp"
#include "uodual/measure.hpp"

namespace uodual {
namespace {

constexpr std::size_t kMaxSwitchover = std::size_t(1) << 22;

double sum_abs_coefficients(const std::vector<GeometricTerm>& terms, std::size_t from = 0) {
  double total = 0.0;
  for (std::size_t i = from; i < terms.size(); ++i) total += std::abs(terms[i].a);
  return total;
}

// Smallest j with bound * ratio^j < target (0 when bound < target already),
// plus one index of slack against rounding in the coordinates themselves.
std::size_t crossing_index(double target, double bound, double ratio) {
  if (bound < target) return 0;
  const double j = std::floor(std::log(target / bound) / std::log(ratio)) + 2.0;
  if (!(j < double(kMaxSwitchover))) throw Error(Errc::InvalidArgument, "tail sign switchover is too far out");
  return std::size_t(std::max(j, 0.0));
}

double tail_sup_abs(const Tail& tail) {
  const double c = std::abs(tail.limit());
  if (tail.terms().empty()) return c;
  if (tail.kind() == Tail::Kind::Geometric) return std::abs(tail.terms().front().a);
  const double total = sum_abs_coefficients(tail.terms());
  const double r = tail.terms().front().r;
  double best = c, envelope = total;
  for (std::size_t j = 0; j < kMaxSwitchover; ++j) {
    best = std::max(best, std::abs(tail.at(j)));
    envelope = total * std::pow(r, double(j));
    if (envelope <= 1e-17 * std::max(best, c) || envelope == 0.0) break;
  }
  return best;
}

}  // namespace

// ---------------------------------------------------------------- Tail

Tail Tail::constant(double c) { return mixed(c, {}); }

Tail Tail::geometric(double a, double r) { return mixed(0.0, {{a, r}}); }

Tail Tail::mixed(double c, std::vector<GeometricTerm> terms) {
  if (!std::isfinite(c)) throw Error(Errc::InvalidArgument, "tail constant must be finite");
  Tail t;
  t.constant_ = c;
  t.terms_ = std::move(terms);
  t.normalize();
  return t;
}

void Tail::normalize() {
  for (const auto& term : terms_) {
    if (!std::isfinite(term.a)) throw Error(Errc::InvalidArgument, "geometric coefficient must be finite");
    if (!(term.r >= 0.0 && term.r < 1.0)) throw Error(Errc::InvalidArgument, "geometric ratio must lie in [0, 1)");
  }
  std::sort(terms_.begin(), terms_.end(), [](const auto& x, const auto& y) { return x.r > y.r; });
  std::vector<GeometricTerm> merged;
  for (const auto& term : terms_) {
    if (!merged.empty() && merged.back().r == term.r)
      merged.back().a += term.a;
    else
      merged.push_back(term);
  }
  std::erase_if(merged, [](const auto& term) { return term.a == 0.0; });
  terms_ = std::move(merged);
  if (constant_ == 0.0) constant_ = 0.0;  // folds -0
}

double Tail::at(std::size_t j) const {
  double v = constant_;
  for (const auto& term : terms_) v += term.a * std::pow(term.r, double(j));
  return v;
}

Tail Tail::shifted(std::size_t j0) const {
  if (j0 == 0) return *this;
  std::vector<GeometricTerm> terms;
  for (const auto& term : terms_) terms.push_back({term.a * std::pow(term.r, double(j0)), term.r});
  return mixed(constant_, std::move(terms));
}

Tail Tail::scaled(double s) const {
  std::vector<GeometricTerm> terms;
  for (const auto& term : terms_) terms.push_back({s * term.a, term.r});
  return mixed(s * constant_, std::move(terms));
}

Tail operator+(const Tail& x, const Tail& y) {
  auto terms = x.terms_;
  terms.insert(terms.end(), y.terms_.begin(), y.terms_.end());
  return Tail::mixed(x.constant_ + y.constant_, std::move(terms));
}

Tail::Kind Tail::kind() const {
  if (terms_.empty()) return constant_ == 0.0 ? Kind::Zero : Kind::Constant;
  if (constant_ == 0.0 && terms_.size() == 1) return Kind::Geometric;
  return Kind::Mixed;
}

bool Tail::has_instant_terms() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.r == 0.0; });
}

Tail Tail::without_instant_terms() const {
  auto terms = terms_;
  std::erase_if(terms, [](const auto& t) { return t.r == 0.0; });
  return mixed(constant_, std::move(terms));
}

SignSwitchover sign_switchover(const Tail& tail) {
  const auto& terms = tail.terms();
  const double c = tail.limit();
  if (terms.empty()) return {0, (c > 0) - (c < 0)};
  if (c != 0.0) return {crossing_index(std::abs(c), sum_abs_coefficients(terms), terms.front().r), c > 0 ? 1 : -1};
  const auto& lead = terms.front();
  const int sign = lead.a > 0 ? 1 : -1;
  if (terms.size() == 1) return {0, sign};
  // Divide through by lead.r^j: the rest decays like (r_2 / r_1)^j.
  const double rest = sum_abs_coefficients(terms, 1);
  const double ratio = terms[1].r / lead.r;
  if (ratio == 0.0) return {1, sign};
  return {crossing_index(std::abs(lead.a), rest, ratio), sign};
}

// ---------------------------------------------------------- TailVector

TailVector::TailVector(std::vector<double> prefix, Tail tail) : prefix_(std::move(prefix)), tail_(std::move(tail)) {
  for (double v : prefix_)
    if (!std::isfinite(v)) throw Error(Errc::InvalidArgument, "prefix coordinates must be finite");
  canonicalize();
}

void TailVector::canonicalize() {
  if (tail_.has_instant_terms()) {
    prefix_.push_back(tail_.at(0));
    tail_ = tail_.shifted(1).without_instant_terms();
  }
  for (double& v : prefix_)
    if (v == 0.0) v = 0.0;
  if (tail_.terms().empty())
    while (!prefix_.empty() && prefix_.back() == tail_.limit()) prefix_.pop_back();
}

TailVector TailVector::unit(std::size_t n, double height) {
  if (n == 0) throw Error(Errc::InvalidArgument, "unit vectors are 1-based");
  std::vector<double> prefix(n, 0.0);
  prefix[n - 1] = height;
  return TailVector(std::move(prefix));
}

TailVector TailVector::block(std::size_t begin, std::size_t end, double height) {
  if (end < begin) throw Error(Errc::InvalidArgument, "block end precedes its start");
  std::vector<double> prefix(end, 0.0);
  std::fill(prefix.begin() + std::ptrdiff_t(begin), prefix.end(), height);
  return TailVector(std::move(prefix));
}

double TailVector::at(std::size_t k) const {
  return k < prefix_.size() ? prefix_[k] : tail_.at(k - prefix_.size());
}

bool TailVector::is_zero() const {
  return tail_.is_zero() && std::all_of(prefix_.begin(), prefix_.end(), [](double v) { return v == 0.0; });
}

std::vector<double> TailVector::head(std::size_t n) const {
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = at(k);
  return out;
}

TailVector TailVector::extended_to(std::size_t length) const {
  TailVector out;
  out.prefix_ = prefix_;
  out.tail_ = tail_;
  if (length <= prefix_.size()) return out;
  for (std::size_t j = 0; j < length - prefix_.size(); ++j) out.prefix_.push_back(tail_.at(j));
  out.tail_ = tail_.shifted(length - prefix_.size());
  return out;
}

bool equivalent(const TailVector& x, const TailVector& y, double tol) {
  const std::size_t n = std::max(x.prefix_size(), y.prefix_size());
  const TailVector a = x.extended_to(n), b = y.extended_to(n);
  for (std::size_t k = 0; k < n; ++k)
    if (std::abs(a.prefix()[k] - b.prefix()[k]) > tol) return false;
  return tail_sup_abs(a.tail() + b.tail().negated()) <= tol;
}

// ---------------------------------------------------------- lattice ops

TailVector abs(const TailVector& x) {
  const auto sw = sign_switchover(x.tail());
  std::vector<double> prefix;
  prefix.reserve(x.prefix_size() + sw.index);
  for (double v : x.prefix()) prefix.push_back(std::abs(v));
  for (std::size_t j = 0; j < sw.index; ++j) prefix.push_back(std::abs(x.tail().at(j)));
  const Tail rest = x.tail().shifted(sw.index);
  return TailVector(std::move(prefix), sw.sign < 0 ? rest.negated() : rest);
}

namespace {

// Pointwise min (take_min) or max of x and y.
TailVector extremum(const TailVector& x, const TailVector& y, bool take_min) {
  const std::size_t n = std::max(x.prefix_size(), y.prefix_size());
  const TailVector a = x.extended_to(n), b = y.extended_to(n);
  std::vector<double> prefix(n);
  for (std::size_t k = 0; k < n; ++k)
    prefix[k] = take_min ? std::min(a.prefix()[k], b.prefix()[k]) : std::max(a.prefix()[k], b.prefix()[k]);
  const auto sw = sign_switchover(a.tail() + b.tail().negated());
  for (std::size_t j = 0; j < sw.index; ++j) {
    const double u = a.tail().at(j), v = b.tail().at(j);
    prefix.push_back(take_min ? std::min(u, v) : std::max(u, v));
  }
  // Past the switchover a - b has a fixed sign, so one side wins for good.
  const bool a_wins = take_min ? sw.sign < 0 : sw.sign > 0;
  return TailVector(std::move(prefix), (a_wins ? a.tail() : b.tail()).shifted(sw.index));
}

}  // namespace

TailVector meet(const TailVector& x, const TailVector& y) { return extremum(x, y, true); }
TailVector join(const TailVector& x, const TailVector& y) { return extremum(x, y, false); }
TailVector positive_part(const TailVector& x) { return join(x, TailVector::zero()); }

TailVector operator+(const TailVector& x, const TailVector& y) {
  const std::size_t n = std::max(x.prefix_size(), y.prefix_size());
  const TailVector a = x.extended_to(n), b = y.extended_to(n);
  std::vector<double> prefix(n);
  for (std::size_t k = 0; k < n; ++k) prefix[k] = a.prefix()[k] + b.prefix()[k];
  return TailVector(std::move(prefix), a.tail() + b.tail());
}

TailVector operator*(double s, const TailVector& x) {
  if (!std::isfinite(s)) throw Error(Errc::InvalidArgument, "scalar must be finite");
  std::vector<double> prefix = x.prefix();
  for (double& v : prefix) v *= s;
  return TailVector(std::move(prefix), x.tail().scaled(s));
}

TailVector operator-(const TailVector& x, const TailVector& y) { return x + (-1.0) * y; }

double dual_pairing(const TailVector& phi, const TailVector& x) {
  const double c1 = phi.tail().limit(), c2 = x.tail().limit();
  if (c1 != 0.0 && c2 != 0.0)
    throw Error(Errc::FunctionalNotBounded, "pairing of two nonvanishing tails diverges");
  const std::size_t pa = phi.prefix_size(), pb = x.prefix_size();
  const std::size_t n = std::max(pa, pb);
  // Coordinates are evaluated only where the other factor is nonzero.
  auto coordinate = [](const TailVector& v, std::size_t k) {
    return k < v.prefix_size() ? v.prefix()[k] : v.tail().at(k - v.prefix_size());
  };
  Eigen::VectorXd parts(Eigen::Index(n) + 1);
  for (std::size_t k = 0; k < n; ++k) {
    const bool a_known = k < pa, b_known = k < pb;
    double product = 0.0;
    if (a_known && phi.prefix()[k] != 0.0) {
      const double b = coordinate(x, k);
      product = phi.prefix()[k] * b;
    } else if (b_known && x.prefix()[k] != 0.0) {
      product = coordinate(phi, k) * x.prefix()[k];
    }
    parts(Eigen::Index(k)) = product;
  }
  const Tail ta = phi.tail().shifted(n - pa), tb = x.tail().shifted(n - pb);
  double tail_sum = 0.0;
  for (const auto& t : tb.terms()) tail_sum += c1 * t.a / (1.0 - t.r);
  for (const auto& t : ta.terms()) tail_sum += c2 * t.a / (1.0 - t.r);
  for (const auto& u : ta.terms())
    for (const auto& v : tb.terms()) tail_sum += u.a * v.a / (1.0 - u.r * v.r);
  parts(Eigen::Index(n)) = tail_sum;
  return ordered_sum(parts);
}

// ---------------------------------------------------------- models

std::string_view to_string(SpaceModel m) {
  switch (m) {
    case SpaceModel::Ell1: return "ell1";
    case SpaceModel::C0: return "c0";
    case SpaceModel::EllInfty: return "ellInfty";
  }
  return "ell1";
}

SpaceModel space_model_from_string(std::string_view name) {
  if (name == "ell1" || name == "l1") return SpaceModel::Ell1;
  if (name == "c0") return SpaceModel::C0;
  if (name == "ellInfty" || name == "ellinfty" || name == "linf") return SpaceModel::EllInfty;
  throw Error(Errc::UnknownName, "unknown space model '" + std::string(name) + "'");
}

bool is_member(const TailVector& x, SpaceModel m) {
  switch (m) {
    case SpaceModel::Ell1:
    case SpaceModel::C0: return x.tail().limit() == 0.0;
    case SpaceModel::EllInfty: return true;
  }
  return false;
}

double model_norm(const TailVector& x, SpaceModel m) {
  if (m == SpaceModel::Ell1) {
    if (x.tail().limit() != 0.0) return std::numeric_limits<double>::infinity();
    const TailVector y = abs(x);
    Eigen::VectorXd parts(Eigen::Index(y.prefix_size() + y.tail().terms().size()));
    Eigen::Index i = 0;
    for (double v : y.prefix()) parts(i++) = v;
    for (const auto& t : y.tail().terms()) parts(i++) = t.a / (1.0 - t.r);
    return std::max(ordered_sum(parts), 0.0);
  }
  double best = tail_sup_abs(x.tail());
  for (double v : x.prefix()) best = std::max(best, std::abs(v));
  return best;
}

// ---------------------------------------------------------- JSON

nlohmann::json to_json(const TailVector& x) {
  nlohmann::json tail;
  const Tail& t = x.tail();
  switch (t.kind()) {
    case Tail::Kind::Zero: tail = {{"kind", "zero"}}; break;
    case Tail::Kind::Constant: tail = {{"kind", "constant"}, {"c", t.limit()}}; break;
    case Tail::Kind::Geometric: tail = {{"kind", "geometric"}, {"a", t.terms()[0].a}, {"r", t.terms()[0].r}}; break;
    case Tail::Kind::Mixed: {
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& term : t.terms()) terms.push_back({{"a", term.a}, {"r", term.r}});
      tail = {{"kind", "mixed"}, {"c", t.limit()}, {"terms", terms}};
      break;
    }
  }
  return {{"prefix", x.prefix()}, {"tail", tail}};
}

TailVector tail_vector_from_json(const nlohmann::json& j) {
  try {
    auto prefix = j.value("prefix", std::vector<double>{});
    if (!j.contains("tail")) return TailVector(std::move(prefix));
    const auto& tail = j.at("tail");
    const auto kind = tail.at("kind").get<std::string>();
    if (kind == "zero") return TailVector(std::move(prefix));
    if (kind == "constant") return TailVector(std::move(prefix), Tail::constant(tail.at("c").get<double>()));
    if (kind == "geometric")
      return TailVector(std::move(prefix), Tail::geometric(tail.at("a").get<double>(), tail.at("r").get<double>()));
    if (kind == "mixed") {
      std::vector<GeometricTerm> terms;
      for (const auto& term : tail.at("terms")) terms.push_back({term.at("a").get<double>(), term.at("r").get<double>()});
      return TailVector(std::move(prefix), Tail::mixed(tail.value("c", 0.0), std::move(terms)));
    }
    throw Error(Errc::InvalidArgument, "unknown tail kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidArgument, std::string("bad TailVector JSON: ") + e.what());
  }
}

}  // namespace uodual
