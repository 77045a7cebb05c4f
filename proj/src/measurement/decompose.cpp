#include "cdpulse/error.hpp"
#include "cdpulse/measurement.hpp"

namespace cdpulse {

ComplexSignal OutputDecomposition::reconstruct(std::size_t j) const {
  return common + offsets.at(j);
}

OutputDecomposition decompose_output(std::span<const ComplexSignal> outputs,
                                     std::vector<std::string> labels,
                                     const ComplexSignal& reference) {
  if (labels.size() != outputs.size())
    throw Error("decompose_output: label count does not match output count");
  OutputDecomposition d{std::move(labels), reference, {}};
  d.offsets.reserve(outputs.size());
  for (const auto& z : outputs) {
    require_same_grid(z, reference, "decompose_output");
    d.offsets.push_back(z - reference);
  }
  return d;
}

}  // namespace cdpulse
