#include <string>
#include <vector>

#include "robfrechet/errors.hpp"
#include "robfrechet/metric.hpp"

namespace robfrechet {

std::vector<double> isotonic_projection(std::span<const double> values,
                                        std::span<const double> weights) {
  if (values.size() != weights.size()) {
    fail(ErrorCode::DimensionMismatch, "isotonic projection: values and weights differ in length");
  }

  struct Block {
    double mean;
    double weight;
    std::size_t count;
  };
  std::vector<Block> blocks;
  blocks.reserve(values.size());

  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!(weights[k] > 0.0)) {
      fail(ErrorCode::InvalidArgument,
           "isotonic projection: weight " + std::to_string(k) + " is not positive");
    }
    blocks.push_back({values[k], weights[k], 1});
    // Merge backwards while the last two blocks violate the ordering.
    while (blocks.size() > 1 && blocks[blocks.size() - 2].mean > blocks.back().mean) {
      const Block top = blocks.back();
      blocks.pop_back();
      Block& prev = blocks.back();
      const double total = prev.weight + top.weight;
      prev.mean = (prev.weight * prev.mean + top.weight * top.mean) / total;
      prev.weight = total;
      prev.count += top.count;
    }
  }

  std::vector<double> out;
  out.reserve(values.size());
  for (const Block& b : blocks) out.insert(out.end(), b.count, b.mean);
  return out;
}

}  // namespace robfrechet
