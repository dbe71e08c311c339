#pragma once

#include <cstdint>
#include <filesystem>

#include "sfch/field.hpp"

namespace sfch {

/// Reads an 8-bit grayscale image (binary PGM, or PNG) as intensities in [0,1].
/// The format is detected from the file's magic bytes, not its extension.
Field2D load_grayscale(const std::filesystem::path& path);

/// Writes `field` as an 8-bit grayscale image. The extension selects the
/// format: ".pgm" writes binary P5 with maxval 255, ".png" writes PNG.
void save_grayscale(const Field2D& field, const std::filesystem::path& path);

/// Mask images: a pixel value >= 128 marks the damaged region.
Mask2D load_mask(const std::filesystem::path& path);
void save_mask(const Mask2D& mask, const std::filesystem::path& path);

/// round-half-up(255 * clamp(v, 0, 1)).
std::uint8_t quantize(double v) noexcept;

}  // namespace sfch
