#include "sepsim/configuration.hpp"

#include <type_traits>
#include <utility>

#include "sepsim/errors.hpp"

namespace sepsim {

Configuration::Configuration(int n, std::vector<std::uint8_t> occupancy)
    : n_(n), occ_(std::move(occupancy)) {
  if (n < 1) throw ConfigError("configuration needs n >= 1");
  if (occ_.size() != static_cast<std::size_t>(2 * n + 1))
    throw ConfigError("occupancy length must be 2n+1");
  for (auto v : occ_)
    if (v > 1) throw ConfigError("occupancy values must be 0 or 1");
  rebuild();
}

void Configuration::rebuild() {
  const int nb = 2 * n_;
  slot_.assign(static_cast<std::size_t>(nb), -1);
  active_.clear();
  particles_ = 0;
  for (auto v : occ_) particles_ += v;
  for (int b = 0; b < nb; ++b) {
    if (occ_[static_cast<std::size_t>(b)] != occ_[static_cast<std::size_t>(b + 1)]) {
      slot_[static_cast<std::size_t>(b)] = static_cast<std::int32_t>(active_.size());
      active_.push_back(b);
    }
  }
}

void Configuration::toggle_bond(int b) {
  auto& s = slot_[static_cast<std::size_t>(b)];
  if (s < 0) {
    s = static_cast<std::int32_t>(active_.size());
    active_.push_back(b);
  } else {
    const std::int32_t last = active_.back();
    active_[static_cast<std::size_t>(s)] = last;
    slot_[static_cast<std::size_t>(last)] = s;
    active_.pop_back();
    s = -1;
  }
}

void Configuration::exchange_bond(int b) {
  std::uint8_t& a = occ_[static_cast<std::size_t>(b)];
  std::uint8_t& c = occ_[static_cast<std::size_t>(b + 1)];
  a ^= 1;
  c ^= 1;
  // b stays discrepant; neighbours see one endpoint flip each.
  if (b > 0) toggle_bond(b - 1);
  if (b + 1 < 2 * n_) toggle_bond(b + 1);
}

void Configuration::fill_site(int x) {
  const int slot = x + n_;
  occ_[static_cast<std::size_t>(slot)] = 1;
  ++particles_;
  if (slot > 0) toggle_bond(slot - 1);
  if (slot < 2 * n_) toggle_bond(slot);
}

void Configuration::empty_site(int x) {
  const int slot = x + n_;
  occ_[static_cast<std::size_t>(slot)] = 0;
  --particles_;
  if (slot > 0) toggle_bond(slot - 1);
  if (slot < 2 * n_) toggle_bond(slot);
}

std::string Configuration::to_string() const {
  std::string out(occ_.size(), '0');
  for (std::size_t i = 0; i < occ_.size(); ++i)
    if (occ_[i]) out[i] = '1';
  return out;
}

Configuration Configuration::from_string(const std::string& line) {
  if (line.size() < 3 || line.size() % 2 == 0)
    throw ConfigError("serialized configuration must have odd length >= 3");
  std::vector<std::uint8_t> occ(line.size());
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '0')
      occ[i] = 0;
    else if (line[i] == '1')
      occ[i] = 1;
    else
      throw ConfigError("serialized configuration may contain only '0'/'1'");
  }
  return Configuration(static_cast<int>(line.size() / 2), std::move(occ));
}

void Configuration::audit() const {
  Configuration fresh(n_, occ_);
  if (fresh.particles_ != particles_)
    throw OrderViolation("configuration audit: particle count drifted");
  if (fresh.active_.size() != active_.size())
    throw OrderViolation("configuration audit: active bond count drifted");
  for (int b = 0; b < 2 * n_; ++b) {
    const bool want = fresh.slot_[static_cast<std::size_t>(b)] >= 0;
    const bool got = slot_[static_cast<std::size_t>(b)] >= 0;
    if (want != got) throw OrderViolation("configuration audit: bond membership drifted");
  }
  for (std::size_t i = 0; i < active_.size(); ++i) {
    const int b = active_[i];
    if (slot_[static_cast<std::size_t>(b)] != static_cast<std::int32_t>(i))
      throw OrderViolation("configuration audit: slot table inconsistent");
  }
}

bool dominates(const Configuration& hi, const Configuration& lo) {
  if (hi.half_width() != lo.half_width()) return false;
  for (int s = 0; s < hi.size(); ++s)
    if (lo.occ_slot(s) > hi.occ_slot(s)) return false;
  return true;
}

Configuration ph_mirror(const Configuration& config) {
  const int n = config.half_width();
  std::vector<std::uint8_t> occ(static_cast<std::size_t>(2 * n + 1));
  for (int x = -n; x <= n; ++x)
    occ[static_cast<std::size_t>(x + n)] = config.occupied(-x) ? 0 : 1;
  return Configuration(n, std::move(occ));
}

Configuration make_configuration(const ModelParams& params, const InitSpec& init, Rng* rng) {
  params.validate();
  const std::size_t len = static_cast<std::size_t>(params.sites());
  return std::visit(
      [&](const auto& spec) -> Configuration {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, AllOnes>) {
          return Configuration(params.n, std::vector<std::uint8_t>(len, 1));
        } else if constexpr (std::is_same_v<T, AllZeros>) {
          return Configuration(params.n, std::vector<std::uint8_t>(len, 0));
        } else if constexpr (std::is_same_v<T, Deterministic>) {
          if (spec.occupancy.size() != len)
            throw ConfigError("deterministic init has wrong length");
          return Configuration(params.n, spec.occupancy);
        } else {
          if (rng == nullptr) throw ConfigError("product-measure init needs an rng");
          std::vector<std::uint8_t> occ(len);
          for (int x = -params.n; x <= params.n; ++x) {
            const double p = spec.density(static_cast<double>(x) / params.n);
            if (!(p >= 0.0 && p <= 1.0))
              throw ConfigError("product-measure density must map into [0,1]");
            occ[static_cast<std::size_t>(x + params.n)] = rng->bernoulli(p) ? 1 : 0;
          }
          return Configuration(params.n, std::move(occ));
        }
      },
      init);
}

}  // namespace sepsim
