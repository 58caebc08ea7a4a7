#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "bsrt/errors.hpp"

namespace bsrt {

/// 8-bit grayscale image, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;
};

/// Otsu's threshold: maximizes between-class variance of the intensity
/// histogram; ties resolved toward the smallest threshold. A single-valued
/// image returns that value. Throws InputError on an empty image.
int otsu_threshold(const GrayImage& img);

/// pixel <= t -> 0 (ink), else 255 (background). Idempotent for a fixed t.
GrayImage binarize(const GrayImage& img, int t);

/// Binary PGM (P5, maxval 255), header "P5\n<w> <h>\n255\n" + raw bytes.
GrayImage read_pgm(const std::filesystem::path& path);
void write_pgm(const GrayImage& img, const std::filesystem::path& path);
GrayImage parse_pgm(const std::string& bytes);
std::string pgm_bytes(const GrayImage& img);

}  // namespace bsrt
