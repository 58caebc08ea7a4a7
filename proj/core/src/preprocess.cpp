#include "bsrt/preprocess.hpp"

#include <array>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace bsrt {

int otsu_threshold(const GrayImage& img) {
    if (img.pixels.empty() || img.width <= 0 || img.height <= 0 ||
        img.pixels.size() != static_cast<std::size_t>(img.width) * img.height) {
        throw InputError("otsu_threshold: empty or inconsistent image");
    }
    std::array<std::uint64_t, 256> hist{};
    for (std::uint8_t p : img.pixels) ++hist[p];

    int lo = 0, hi = 255;
    while (hist[lo] == 0) ++lo;
    while (hist[hi] == 0) --hi;
    if (lo == hi) {
        return lo;  // single-valued image
    }

    const double total = static_cast<double>(img.pixels.size());
    double sum = 0.0;
    for (int i = 0; i < 256; ++i) sum += static_cast<double>(i) * static_cast<double>(hist[i]);

    double w0 = 0.0, sum0 = 0.0;
    double best_var = -1.0;
    int best_t = 0;
    for (int t = 0; t < 256; ++t) {
        w0 += static_cast<double>(hist[t]);
        sum0 += static_cast<double>(t) * static_cast<double>(hist[t]);
        const double w1 = total - w0;
        if (w0 == 0.0) continue;
        if (w1 == 0.0) break;
        const double m0 = sum0 / w0;
        const double m1 = (sum - sum0) / w1;
        const double var = w0 * w1 * (m0 - m1) * (m0 - m1);
        if (var > best_var) {
            best_var = var;
            best_t = t;
        }
    }
    return best_t;
}

GrayImage binarize(const GrayImage& img, int t) {
    GrayImage out;
    out.width = img.width;
    out.height = img.height;
    out.pixels.reserve(img.pixels.size());
    for (std::uint8_t p : img.pixels) {
        out.pixels.push_back(p <= t ? 0 : 255);
    }
    return out;
}

namespace {

// Reads one whitespace-delimited header token, skipping '#' comment lines.
std::string next_header_token(const std::string& bytes, std::size_t& pos) {
    while (pos < bytes.size()) {
        const char c = bytes[pos];
        if (c == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            ++pos;
        } else {
            break;
        }
    }
    const std::size_t start = pos;
    while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
    if (start == pos) {
        throw ParseError("pgm: truncated header", start);
    }
    return bytes.substr(start, pos - start);
}

long parse_header_int(const std::string& bytes, std::size_t& pos, const char* what) {
    const std::string tok = next_header_token(bytes, pos);
    try {
        std::size_t used = 0;
        const long v = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("pgm: bad ") + what + " value '" + tok + "'", pos);
    }
}

}  // namespace

GrayImage parse_pgm(const std::string& bytes) {
    std::size_t pos = 0;
    if (next_header_token(bytes, pos) != "P5") {
        throw ParseError("pgm: missing P5 magic", 0);
    }
    const long w = parse_header_int(bytes, pos, "width");
    const long h = parse_header_int(bytes, pos, "height");
    const long maxval = parse_header_int(bytes, pos, "maxval");
    if (w <= 0 || h <= 0) {
        throw ParseError("pgm: non-positive dimensions", pos);
    }
    if (maxval != 255) {
        throw ParseError("pgm: only maxval 255 is supported", pos);
    }
    if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
        throw ParseError("pgm: missing whitespace after header", pos);
    }
    ++pos;  // exactly one whitespace byte separates header and raster
    const std::size_t need = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    if (bytes.size() - pos < need) {
        throw ParseError("pgm: truncated raster data", bytes.size());
    }
    GrayImage img;
    img.width = static_cast<int>(w);
    img.height = static_cast<int>(h);
    img.pixels.assign(bytes.begin() + static_cast<long>(pos),
                      bytes.begin() + static_cast<long>(pos + need));
    return img;
}

std::string pgm_bytes(const GrayImage& img) {
    std::ostringstream out;
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    return out.str();
}

GrayImage read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open image: " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_pgm(ss.str());
}

void write_pgm(const GrayImage& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write image: " + path.string());
    }
    const std::string bytes = pgm_bytes(img);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace bsrt
