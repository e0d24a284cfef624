#include <algorithm>
#include <cmath>

#include "uodual/error.hpp"
#include "uodual/lattice.hpp"

namespace uodual {
namespace {

// Values a[0..] are |x_n(k)| for n = H/2 .. H.
bool shows_decay(const std::vector<double>& a, double tol) {
  const std::size_t n = a.size();
  const std::size_t last_quarter = n / 2;
  if (std::all_of(a.begin() + std::ptrdiff_t(last_quarter), a.end(), [tol](double v) { return v <= tol; }))
    return true;
  for (std::size_t i = 1; i < n; ++i)
    if (a[i] > a[i - 1]) return false;
  return a.back() <= 0.5 * a.front() * (1.0 + 1e-12);
}

std::vector<TailVector> window(const VectorSequence& s, std::size_t from, std::size_t to) {
  std::vector<TailVector> out;
  out.reserve(to - from + 1);
  for (std::size_t n = from; n <= to; ++n) out.push_back(s(n));
  return out;
}

TailVector envelope(const VectorSequence& s, std::size_t from, std::size_t to) {
  TailVector sup = TailVector::zero();
  for (std::size_t n = from; n <= to; ++n) sup = join(sup, abs(s(n)));
  return sup;
}

}  // namespace

UoNullResult is_uo_null(const VectorSequence& s, SpaceModel, double tol, std::size_t coordinate_budget) {
  const std::size_t h = s.horizon;
  if (h < 8) throw Error(Errc::InvalidArgument, "uo checks need a horizon of at least 8");
  const std::size_t budget = coordinate_budget ? coordinate_budget : h / 2;
  const auto xs = window(s, h / 2, h);

  std::vector<double> a(xs.size());
  for (std::size_t k = 0; k < budget; ++k) {
    for (std::size_t i = 0; i < xs.size(); ++i) a[i] = std::abs(xs[i].at(k));
    if (!shows_decay(a, tol)) return {false, k + 1};
  }
  // Coordinates past the budget: the tails converge to their limits, so
  // those limits must vanish too.
  for (std::size_t i = 0; i < xs.size(); ++i) a[i] = std::abs(xs[i].tail().limit());
  if (!shows_decay(a, tol)) {
    std::size_t far = budget;
    for (const auto& x : xs) far = std::max(far, x.prefix_size());
    return {false, far + 1};
  }
  return {true, 0};
}

OrderNullResult is_order_null(const VectorSequence& s, SpaceModel m, double tol, std::size_t coordinate_budget) {
  OrderNullResult r;
  r.uo = is_uo_null(s, m, tol, coordinate_budget);
  const std::size_t h = s.horizon;
  r.envelope = envelope(s, h / 2, h);
  const TailVector wider = join(r.envelope, envelope(s, h + 1, 2 * h));
  r.envelope_norm = model_norm(r.envelope, m);
  r.extended_envelope_norm = model_norm(wider, m);
  r.order_bounded_tail = is_member(r.envelope, m) && is_member(wider, m) && std::isfinite(r.extended_envelope_norm) &&
                         r.extended_envelope_norm - r.envelope_norm <= tol + 1e-9 * r.envelope_norm;
  r.order_null_evidence = r.uo.null_evidence && r.order_bounded_tail;
  return r;
}

DisjointResult is_disjoint(const VectorSequence& s) {
  if (s.horizon < 2) throw Error(Errc::InvalidArgument, "disjointness needs a horizon of at least 2");
  std::vector<TailVector> moduli;
  moduli.reserve(s.horizon);
  for (std::size_t n = 1; n <= s.horizon; ++n) moduli.push_back(abs(s(n)));
  for (std::size_t i = 0; i < moduli.size(); ++i)
    for (std::size_t j = i + 1; j < moduli.size(); ++j)
      if (!meet(moduli[i], moduli[j]).is_zero()) return {false, i + 1, j + 1};
  return {};
}

OcPartResult oc_part_membership(const TailVector& x, SpaceModel m, std::size_t witness_blocks) {
  if (!is_member(x, m)) throw Error(Errc::InvalidArgument, "vector is not a member of the model");
  OcPartResult r;
  if (m != SpaceModel::EllInfty || x.tail().limit() == 0.0) return r;

  r.member = false;
  const TailVector modulus = abs(x);
  const double level = std::abs(x.tail().limit());
  // Past `start` every coordinate of |x| is at least level/2.
  const auto sw = sign_switchover(modulus.tail() + Tail::constant(-0.5 * level));
  const std::size_t start = modulus.prefix_size() + sw.index;
  for (std::size_t n = 0; n < witness_blocks; ++n) {
    const std::size_t begin = start + (std::size_t(1) << n) - 1, end = start + (std::size_t(2) << n) - 1;
    std::vector<double> prefix(end, 0.0);
    for (std::size_t k = begin; k < end; ++k) prefix[k] = modulus.at(k);
    TailVector block(std::move(prefix));
    r.witness_norms.push_back(model_norm(block, m));
    r.witness_blocks.push_back(std::move(block));
  }
  return r;
}

SpaceModel uo_dual_expected(SpaceModel m) {
  switch (m) {
    case SpaceModel::Ell1: return SpaceModel::C0;
    case SpaceModel::C0: return SpaceModel::Ell1;
    case SpaceModel::EllInfty: return SpaceModel::Ell1;
  }
  return SpaceModel::Ell1;
}

nlohmann::json to_json(const UoNullResult& r) {
  nlohmann::json j{{"verdict", std::string(r.verdict())}};
  j["witness"] = r.null_evidence ? nlohmann::json(nullptr) : nlohmann::json{{"coordinate", r.witness_coordinate}};
  return j;
}

nlohmann::json to_json(const OrderNullResult& r) {
  return {{"verdict", std::string(r.verdict())},
          {"uo", to_json(r.uo)},
          {"order_bounded_tail", r.order_bounded_tail},
          {"envelope", to_json(r.envelope)},
          {"envelope_norm", r.envelope_norm},
          {"extended_envelope_norm", r.extended_envelope_norm}};
}

nlohmann::json to_json(const DisjointResult& r) {
  nlohmann::json j{{"verdict", r.disjoint ? "disjoint" : "not-disjoint"}};
  j["witness"] = r.disjoint ? nlohmann::json(nullptr) : nlohmann::json::array({r.first, r.second});
  return j;
}

nlohmann::json to_json(const OcPartResult& r) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : r.witness_blocks) blocks.push_back(to_json(b));
  return {{"verdict", std::string(r.verdict())}, {"witness", blocks}, {"witness_norms", r.witness_norms}};
}

}  // namespace uodual
