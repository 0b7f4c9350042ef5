#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tsq/core.hpp"

namespace tsq {

/// Keeps the first (timestamp, value) of each maximal run of equal
/// consecutive values. Throws std::invalid_argument on an empty input.
CompressedSeries compress(const QuantizedSeries& quantized);

/// Last-observation-carried-forward expansion of the change points onto the
/// given strictly increasing timestamp grid. The grid must start at the first
/// change point's timestamp and contain every change-point timestamp; a
/// violation throws std::invalid_argument.
std::vector<double> decompress(const CompressedSeries& compressed,
                               std::span<const int64_t> grid);

}  // namespace tsq
