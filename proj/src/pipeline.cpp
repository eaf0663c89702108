#include <algorithm>
#include <string>

#include "dagpart/instances.hpp"

namespace dagpart {
namespace {

constexpr int kPyramidLevels = 6;
constexpr Weight kFullFrameKilopixels = 1024 * 768 / 1000;

Weight level_pixels(int level) { return std::max<Weight>(1, kFullFrameKilopixels >> (2 * level)); }

}  // namespace

WeightedDigraph gen_pipeline_stand_in() {
  DigraphBuilder b;
  // Buffer size of an edge is the output size of its source node.
  std::vector<Weight> output_size;
  auto node = [&](Weight program_bytes, Weight out_kpx) {
    output_size.push_back(out_kpx);
    return b.add_node(program_bytes);
  };
  auto edge = [&](NodeId from, NodeId to) { b.add_edge(from, to, output_size[from]); };

  const Weight full = level_pixels(0);
  const NodeId input = node(1200, full);
  const NodeId denoise = node(7400, full);
  const NodeId demosaic = node(8800, full);
  const NodeId to_gray = node(2100, full);
  const NodeId normalize = node(2600, full);
  edge(input, denoise);
  edge(denoise, demosaic);
  edge(demosaic, to_gray);
  edge(to_gray, normalize);

  const NodeId lut = node(6100, 1);
  edge(normalize, lut);

  // Gaussian pyramid: gauss[0] is the normalized image.
  std::vector<NodeId> gauss{normalize};
  for (int l = 1; l <= kPyramidLevels; ++l) {
    const NodeId blur_x = node(4200, level_pixels(l - 1));
    const NodeId blur_y = node(4200, level_pixels(l - 1));
    const NodeId down = node(2500, level_pixels(l));
    edge(gauss.back(), blur_x);
    edge(blur_x, blur_y);
    edge(blur_y, down);
    gauss.push_back(down);
  }

  // Laplacian levels and their remapping.
  std::vector<NodeId> remap(kPyramidLevels);
  for (int l = 0; l < kPyramidLevels; ++l) {
    const NodeId up_x = node(3100, level_pixels(l));
    const NodeId up_y = node(3100, level_pixels(l));
    const NodeId sub = node(1500, level_pixels(l));
    edge(gauss[l + 1], up_x);
    edge(up_x, up_y);
    edge(gauss[l], sub);
    edge(up_y, sub);
    remap[l] = node(9300, level_pixels(l));
    edge(sub, remap[l]);
    edge(lut, remap[l]);
  }
  const NodeId remap_top = node(9300, level_pixels(kPyramidLevels));
  edge(gauss[kPyramidLevels], remap_top);
  edge(lut, remap_top);

  // Collapse from coarse to fine.
  NodeId result = remap_top;
  for (int l = kPyramidLevels - 1; l >= 0; --l) {
    const NodeId up_x = node(3100, level_pixels(l));
    const NodeId up_y = node(3100, level_pixels(l));
    const NodeId add = node(1500, level_pixels(l));
    edge(result, up_x);
    edge(up_x, up_y);
    edge(up_y, add);
    edge(remap[l], add);
    result = add;
  }

  const NodeId color_restore = node(5200, full);
  const NodeId sharpen = node(4800, full);
  const NodeId tone = node(3900, full);
  const NodeId gamma = node(1800, full);
  const NodeId output = node(1000, full);
  edge(result, color_restore);
  edge(demosaic, color_restore);
  edge(color_restore, sharpen);
  edge(normalize, sharpen);
  edge(sharpen, tone);
  edge(lut, tone);
  edge(tone, gamma);
  edge(gamma, output);
  return std::move(b).build();
}

}  // namespace dagpart
