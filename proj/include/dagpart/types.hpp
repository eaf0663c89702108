#pragma once

#include <cstdint>
#include <vector>

namespace dagpart {

using NodeId = std::uint32_t;
using BlockId = std::uint32_t;
using Weight = std::uint64_t;
using Gain = std::int64_t;

/// Block id per node, indexed by node id.
using Assignment = std::vector<BlockId>;

}  // namespace dagpart
