#include "sgmm/choice_function.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "sgmm/error.hpp"

namespace sgmm {

namespace {

int total(std::span<const int> z) { return std::accumulate(z.begin(), z.end(), 0); }

bool leq(std::span<const int> a, std::span<const int> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

LocalVector vmax(std::span<const int> a, std::span<const int> b) {
  LocalVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

LocalVector vmin(std::span<const int> a, std::span<const int> b) {
  LocalVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::min(a[i], b[i]);
  return r;
}

void check_positions(std::size_t arity, std::initializer_list<std::size_t> ps) {
  for (auto p : ps)
    if (p >= arity) throw PreconditionError("choice function refers to a missing edge slot");
}

}  // namespace

std::uint64_t box_volume(std::span<const int> capacities) {
  std::uint64_t v = 1;
  for (int b : capacities) {
    auto f = static_cast<std::uint64_t>(b) + 1;
    if (v > std::numeric_limits<std::uint64_t>::max() / f) return std::numeric_limits<std::uint64_t>::max();
    v *= f;
  }
  return v;
}

std::uint64_t box_rank(std::span<const int> capacities, std::span<const int> z) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < capacities.size(); ++i)
    r = r * (static_cast<std::uint64_t>(capacities[i]) + 1) + static_cast<std::uint64_t>(z[i]);
  return r;
}

LocalVector box_unrank(std::span<const int> capacities, std::uint64_t rank) {
  LocalVector z(capacities.size());
  for (std::size_t i = capacities.size(); i-- > 0;) {
    auto f = static_cast<std::uint64_t>(capacities[i]) + 1;
    z[i] = static_cast<int>(rank % f);
    rank /= f;
  }
  return z;
}

bool in_box(std::span<const int> capacities, std::span<const int> z) {
  if (z.size() != capacities.size()) return false;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] < 0 || z[i] > capacities[i]) return false;
  return true;
}

void for_each_in_range(std::span<const int> lo, std::span<const int> hi,
                       const std::function<void(const LocalVector&)>& fn) {
  LocalVector z(lo.begin(), lo.end());
  for (std::size_t i = 0; i < z.size(); ++i)
    if (lo[i] > hi[i]) return;
  while (true) {
    fn(z);
    std::size_t i = z.size();
    while (i > 0) {
      --i;
      if (z[i] < hi[i]) {
        ++z[i];
        break;
      }
      z[i] = lo[i];
      if (i == 0) return;
    }
    if (z.empty()) return;
  }
}

ChoiceFunction ChoiceFunction::linear_order(LocalVector capacities, std::vector<std::size_t> order,
                                            int quota) {
  std::vector<std::size_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> expected(capacities.size());
  std::iota(expected.begin(), expected.end(), 0);
  if (sorted != expected) throw PreconditionError("linear order must list every incident edge once");
  if (quota < 0) throw PreconditionError("negative quota");
  return ChoiceFunction(std::move(capacities), Linear{std::move(order), quota});
}

ChoiceFunction ChoiceFunction::balance(LocalVector capacities, std::size_t anchor, std::size_t left,
                                       std::size_t right, int quota) {
  if (capacities.size() != 3) throw PreconditionError("balance rule needs exactly three edges");
  check_positions(3, {anchor, left, right});
  if (anchor == left || anchor == right || left == right)
    throw PreconditionError("balance rule slots must be distinct");
  if (quota < 0 || quota % 2 != 0) throw PreconditionError("balance rule quota must be even");
  if (capacities[anchor] > quota) throw PreconditionError("balance anchor capacity exceeds quota");
  return ChoiceFunction(std::move(capacities), Balance{anchor, left, right, quota});
}

ChoiceFunction ChoiceFunction::table(LocalVector capacities, std::vector<LocalVector> images) {
  if (images.size() != box_volume(capacities))
    throw PreconditionError("table must list an image for every point of the box");
  for (std::uint64_t r = 0; r < images.size(); ++r) {
    LocalVector z = box_unrank(capacities, r);
    if (images[r].size() != z.size() || !in_box(capacities, images[r]) || !leq(images[r], z))
      throw PreconditionError("table image is not below its argument");
  }
  return ChoiceFunction(std::move(capacities), Table{std::move(images)});
}

LocalVector ChoiceFunction::operator()(std::span<const int> z) const {
  if (!in_box(caps_, z)) throw PreconditionError("choice function argument outside its box");
  if (const auto* lin = std::get_if<Linear>(&rule_)) {
    if (total(z) <= lin->quota) return LocalVector(z.begin(), z.end());
    LocalVector out(z.size(), 0);
    int room = lin->quota;
    for (std::size_t pos : lin->order) {
      int take = std::min(z[pos], room);
      out[pos] = take;
      room -= take;
      if (room == 0) break;
    }
    return out;
  }
  if (const auto* bal = std::get_if<Balance>(&rule_)) {
    if (total(z) <= bal->quota) return LocalVector(z.begin(), z.end());
    LocalVector out(3, 0);
    int rest = bal->quota - z[bal->anchor];
    int zc = z[bal->left];
    int zd = z[bal->right];
    int lo = std::max(0, rest - zd);
    int zeta = std::clamp((rest + 1) / 2, lo, zc);
    out[bal->anchor] = z[bal->anchor];
    out[bal->left] = zeta;
    out[bal->right] = rest - zeta;
    return out;
  }
  return std::get<Table>(rule_).images[box_rank(caps_, z)];
}

CfKind ChoiceFunction::kind() const {
  if (std::holds_alternative<Linear>(rule_)) return CfKind::linear_order;
  if (std::holds_alternative<Balance>(rule_)) return CfKind::balance;
  return CfKind::table;
}

std::optional<int> ChoiceFunction::quota() const {
  if (const auto* lin = std::get_if<Linear>(&rule_)) return lin->quota;
  if (const auto* bal = std::get_if<Balance>(&rule_)) return bal->quota;
  return std::nullopt;
}

const std::vector<std::size_t>& ChoiceFunction::order() const { return std::get<Linear>(rule_).order; }
std::size_t ChoiceFunction::anchor() const { return std::get<Balance>(rule_).anchor; }
std::size_t ChoiceFunction::left() const { return std::get<Balance>(rule_).left; }
std::size_t ChoiceFunction::right() const { return std::get<Balance>(rule_).right; }
const std::vector<LocalVector>& ChoiceFunction::images() const { return std::get<Table>(rule_).images; }

const AxiomCounterexample* AxiomReport::counterexample(const std::string& axiom) const {
  for (const auto& c : counterexamples)
    if (c.axiom == axiom) return &c;
  return nullptr;
}

AxiomReport check_axioms(const ChoiceFunction& cf, std::uint64_t pair_cap, bool with_stationarity) {
  const LocalVector& caps = cf.capacities();
  std::uint64_t volume = box_volume(caps);
  // Dominance pairs plus all ordered pairs for stationarity.
  std::uint64_t dominance = 1;
  for (int b : caps) dominance *= static_cast<std::uint64_t>(b + 1) * static_cast<std::uint64_t>(b + 2) / 2;
  std::uint64_t all_pairs = with_stationarity ? volume * volume : 0;
  if (volume > (1u << 30) || dominance + all_pairs > pair_cap)
    throw CapExceeded("axiom check would examine more than " + std::to_string(pair_cap) + " pairs");

  std::vector<LocalVector> image(volume);
  for (std::uint64_t r = 0; r < volume; ++r) image[r] = cf(box_unrank(caps, r));

  AxiomReport rep;
  if (cf.quota()) rep.a4 = true;
  auto fail = [&](bool& flag, const char* name, const LocalVector& z, const LocalVector& z2) {
    if (flag) rep.counterexamples.push_back({name, z, z2});
    flag = false;
  };

  LocalVector zero(caps.size(), 0);
  for (std::uint64_t r = 0; r < volume; ++r) {
    LocalVector z = box_unrank(caps, r);
    const LocalVector& cz = image[r];
    if (!leq(cz, z)) fail(rep.shrinking, "shrinking", z, cz);
    if (rep.a4.value_or(false) && total(cz) != std::min(total(z), *cf.quota())) {
      rep.a4 = false;
      rep.counterexamples.push_back({"A4", z, cz});
    }
    if (!leq(cz, z)) continue;
    for_each_in_range(cz, z, [&](const LocalVector& z2) {
      ++rep.pairs_examined;
      if (image[box_rank(caps, z2)] != cz) fail(rep.a1, "A1", z, z2);
    });
    for_each_in_range(zero, z, [&](const LocalVector& z2) {
      ++rep.pairs_examined;
      const LocalVector& cz2 = image[box_rank(caps, z2)];
      if (!leq(vmin(cz, z2), cz2)) fail(rep.a2, "A2", z, z2);
      if (total(cz) < total(cz2)) fail(rep.a3, "A3", z, z2);
    });
  }
  if (!with_stationarity) return rep;
  rep.stationary = true;
  for (std::uint64_t r = 0; r < volume; ++r) {
    LocalVector z = box_unrank(caps, r);
    for (std::uint64_t s = 0; s < volume; ++s) {
      ++rep.pairs_examined;
      LocalVector z2 = box_unrank(caps, s);
      const LocalVector& lhs = image[box_rank(caps, vmax(z, z2))];
      const LocalVector& rhs = image[box_rank(caps, vmax(image[r], z2))];
      if (lhs != rhs) {
        rep.stationary = false;
        rep.counterexamples.push_back({"stationarity", z, z2});
        return rep;
      }
    }
  }
  return rep;
}

bool revealed_prefers(const ChoiceFunction& cf, std::span<const int> z, std::span<const int> z2) {
  if (cf(z) != LocalVector(z.begin(), z.end()) || cf(z2) != LocalVector(z2.begin(), z2.end()))
    throw PreconditionError("revealed preference needs acceptable vectors");
  if (std::equal(z.begin(), z.end(), z2.begin(), z2.end()))
    throw PreconditionError("revealed preference needs distinct vectors");
  return cf(vmax(z, z2)) == LocalVector(z.begin(), z.end());
}

LocalVector closure(const ChoiceFunction& cf, std::span<const int> z) {
  LocalVector base(z.begin(), z.end());
  if (cf(base) != base) throw PreconditionError("closure needs an acceptable vector");
  const LocalVector& caps = cf.capacities();
  LocalVector bar = base;
  for (std::size_t i = 0; i < base.size(); ++i) {
    LocalVector probe = base;
    while (probe[i] < caps[i]) {
      ++probe[i];
      if (cf(probe) != base) break;
      bar[i] = probe[i];
    }
  }
  if (cf(bar) != base) throw InvariantViolation("closure is not a preimage of its base vector");
  return bar;
}

JoinMeet local_join_meet(const ChoiceFunction& cf, std::span<const int> z, std::span<const int> z2) {
  LocalVector a(z.begin(), z.end()), b(z2.begin(), z2.end());
  if (cf(a) != a || cf(b) != b) throw PreconditionError("join/meet needs acceptable vectors");
  return {cf(vmax(a, b)), cf(vmin(closure(cf, a), closure(cf, b)))};
}

GaplessReport check_gapless(const ChoiceFunction& cf, std::uint64_t triple_cap) {
  const LocalVector& caps = cf.capacities();
  std::uint64_t volume = box_volume(caps);
  if (volume > (1u << 22)) throw CapExceeded("gapless check box too large");
  std::vector<LocalVector> acc;
  for (std::uint64_t r = 0; r < volume; ++r) {
    LocalVector z = box_unrank(caps, r);
    if (cf(z) == z) acc.push_back(std::move(z));
  }
  std::uint64_t n = acc.size();
  if (n * n * n > triple_cap) throw CapExceeded("gapless check would examine too many triples");

  const std::size_t k = caps.size();
  constexpr int kNone = -1;   // no exchange: a not interesting, or pure growth
  constexpr int kSat = -2;    // a saturated
  std::vector<std::vector<int>> drop(n, std::vector<int>(k, kNone));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < k; ++a) {
      if (acc[i][a] == caps[a]) {
        drop[i][a] = kSat;
        continue;
      }
      LocalVector y = acc[i];
      ++y[a];
      LocalVector c = cf(y);
      for (std::size_t e = 0; e < k; ++e)
        if (e != a && c[e] == y[e] - 1 && c[a] == y[a]) drop[i][a] = static_cast<int>(e);
    }
  // less[i][j]: acc[i] revealed worse than acc[j].
  std::vector<std::vector<char>> less(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && cf(vmax(acc[i], acc[j])) == acc[j]) less[i][j] = 1;

  GaplessReport rep;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!less[i][j]) continue;
      for (std::size_t l = 0; l < n; ++l) {
        if (!less[j][l]) continue;
        for (std::size_t a = 0; a < k; ++a) {
          int c1 = drop[i][a], c2 = drop[j][a], c3 = drop[l][a];
          if (c1 < 0 || c2 < 0 || c3 < 0) continue;
          if (c1 == c3 && c2 != c1) {
            rep.holds = false;
            rep.witness = {acc[i], acc[j], acc[l]};
            rep.edge = a;
            return rep;
          }
        }
      }
    }
  return rep;
}

}  // namespace sgmm
