#include "quadloc/sim/plant.hpp"

namespace quadloc::sim {

Plant::Plant(const model::RobotParams& rp) : T_s_(rp.T_s), q_(rp.q_stance), rng_(0) {}

void Plant::set_perturbation(const Perturbation& p) {
  pert_ = p;
  rng_ = p.seed;
}

double Plant::next_noise() {
  // splitmix64: tiny, seedable, and identical on every platform.
  rng_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = rng_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  z ^= z >> 31;
  const double unit = static_cast<double>(z >> 11) * 0x1.0p-53;
  return pert_.amplitude * (2.0 * unit - 1.0);
}

void Plant::integrate_joints(const std::array<la::Vec3, 4>& qdot) {
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 3; ++k) {
      q_[i][k] += T_s_ * qdot[i][k];
      if (pert_.enabled) q_[i][k] += next_noise();
    }
  }
}

std::array<int, 4> detect_contacts(const std::array<la::Vec3, 4>& of_w, double threshold) {
  std::array<int, 4> sigma{};
  for (int i = 0; i < 4; ++i) sigma[i] = of_w[i][2] <= threshold ? 1 : 0;
  return sigma;
}

}  // namespace quadloc::sim
