#include "cdpulse/error.hpp"
#include "cdpulse/network.hpp"

#include <cmath>

namespace cdpulse {
namespace {

struct ShiftedState {
  std::string label;
  double chi;
};

std::vector<ShiftedState> register_states(const std::vector<double>& chis, ChiMode mode,
                                          const std::vector<int>& signs) {
  std::vector<ShiftedState> out;
  if (mode == ChiMode::States) {
    for (std::size_t i = 0; i < chis.size(); ++i) out.push_back({"s" + std::to_string(i), chis[i]});
    return out;
  }
  const std::size_t n = chis.size();
  if (n > 16) throw Error("enumerate_states: at most 16 qubits supported");
  if (!signs.empty() && signs.size() != n) throw Error("enumerate_states: signs/chis length mismatch");
  for (std::size_t b = 0; b < (std::size_t{1} << n); ++b) {
    std::string label(n, '0');
    double chi = 0.0;
    for (std::size_t q = 0; q < n; ++q) {
      const bool excited = (b >> (n - 1 - q)) & 1u;
      label[q] = excited ? '1' : '0';
      const double s = signs.empty() ? 1.0 : static_cast<double>(signs[q]);
      chi += (excited ? -1.0 : 1.0) * s * chis[q];
    }
    out.push_back({std::move(label), chi});
  }
  return out;
}

StateMode cavity_mode(std::string label, double kappa, double delta, double chi) {
  return {std::move(label), chi, kappa, kI * (delta + chi) - kappa / 2.0};
}

}  // namespace

const char* NetworkScenario::topology_name() const {
  if (std::holds_alternative<SingleCavity>(topology)) return "single_cavity";
  if (std::holds_alternative<Purcell>(topology)) return "purcell";
  return "cascade";
}

NetworkScenario NetworkScenario::without_dispersive_shifts() const {
  NetworkScenario out = *this;
  std::visit(
      [](auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, Cascade>) {
          t.cavity1.chi = {0.0, 0.0};
          t.cavity2.chi = {0.0, 0.0};
        } else {
          for (auto& c : t.chis) c = 0.0;
        }
      },
      out.topology);
  return out;
}

std::vector<NetworkState> enumerate_states(const NetworkScenario& scenario) {
  std::vector<NetworkState> out;
  if (const auto* sc = std::get_if<SingleCavity>(&scenario.topology)) {
    for (auto& s : register_states(sc->chis, sc->chi_mode, sc->signs))
      out.push_back({s.label, {cavity_mode(s.label, sc->kappa, sc->delta, s.chi)}});
  } else if (const auto* pc = std::get_if<Purcell>(&scenario.topology)) {
    for (auto& s : register_states(pc->chis, pc->chi_mode, pc->signs)) {
      StateMode c1{s.label, s.chi, 0.0, kI * (pc->delta_c + s.chi) - pc->cavity1_loss / 2.0};
      StateMode c2 = cavity_mode(s.label + ":filter", pc->kappa, pc->delta_f, 0.0);
      out.push_back({s.label, {c1, c2}});
    }
  } else {
    const auto& cc = std::get<Cascade>(scenario.topology);
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        std::string label = std::to_string(j) + std::to_string(k);
        out.push_back({label,
                       {cavity_mode(label + ":c1", cc.cavity1.kappa, cc.cavity1.delta, cc.cavity1.chi[j]),
                        cavity_mode(label + ":c2", cc.cavity2.kappa, cc.cavity2.delta, cc.cavity2.chi[k])}});
      }
    }
  }
  return out;
}

}  // namespace cdpulse
