#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace trinary {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend constexpr bool operator==(const Rgb&, const Rgb&) = default;
};

static_assert(sizeof(Rgb) == 3, "Rgb must be tightly packed for raster I/O");

/// Row-major 8-bit RGB raster.
struct Image {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<Rgb> pixels;

    Image() = default;
    Image(std::size_t w, std::size_t h) : width(w), height(h), pixels(w * h) {}

    [[nodiscard]] Rgb& at(std::size_t col, std::size_t row) { return pixels[row * width + col]; }
    [[nodiscard]] const Rgb& at(std::size_t col, std::size_t row) const { return pixels[row * width + col]; }

    friend bool operator==(const Image&, const Image&) = default;
};

class PpmError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Binary P6, maxval 255, single-space/newline separated header, no comments.
inline void write_ppm(std::ostream& os, const Image& img) {
    os << "P6\n" << img.width << " " << img.height << "\n255\n";
    os.write(reinterpret_cast<const char*>(img.pixels.data()),
             static_cast<std::streamsize>(img.pixels.size() * sizeof(Rgb)));
    if (!os) throw PpmError("write_ppm: stream write failed");
}

inline void write_ppm(const std::filesystem::path& path, const Image& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PpmError("write_ppm: cannot open " + path.string());
    write_ppm(out, img);
}

inline std::string encode_ppm(const Image& img) {
    std::string bytes = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    bytes.append(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size() * sizeof(Rgb));
    return bytes;
}

namespace detail {

inline void skip_ppm_space(std::istream& is) {
    for (;;) {
        const int c = is.peek();
        if (c == '#') {
            std::string comment;
            std::getline(is, comment);
        } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            is.get();
        } else {
            return;
        }
    }
}

inline std::size_t read_ppm_uint(std::istream& is) {
    skip_ppm_space(is);
    long long value = -1;
    is >> value;
    if (!is || value < 0) throw PpmError("read_ppm: malformed header");
    return static_cast<std::size_t>(value);
}

}  // namespace detail

/// Reads P6 or P3 with maxval <= 255; samples are rescaled to 0..255.
inline Image read_ppm(std::istream& is) {
    std::string magic(2, '\0');
    is.read(magic.data(), 2);
    if (!is || (magic != "P6" && magic != "P3")) throw PpmError("read_ppm: not a P6/P3 file");
    const auto width = detail::read_ppm_uint(is);
    const auto height = detail::read_ppm_uint(is);
    const auto maxval = detail::read_ppm_uint(is);
    if (width == 0 || height == 0) throw PpmError("read_ppm: empty image");
    if (maxval == 0 || maxval > 255) throw PpmError("read_ppm: only maxval 1..255 supported");

    Image img(width, height);
    auto scale = [maxval](std::size_t v) -> std::uint8_t {
        if (v > maxval) throw PpmError("read_ppm: sample exceeds maxval");
        return static_cast<std::uint8_t>((v * 255 + maxval / 2) / maxval);
    };
    if (magic == "P6") {
        is.get();  // exactly one whitespace byte before the raster
        std::vector<unsigned char> raw(width * height * 3);
        is.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (is.gcount() != static_cast<std::streamsize>(raw.size())) throw PpmError("read_ppm: truncated raster");
        for (std::size_t i = 0; i < img.pixels.size(); ++i) {
            img.pixels[i] = {scale(raw[3 * i]), scale(raw[3 * i + 1]), scale(raw[3 * i + 2])};
        }
    } else {
        for (auto& px : img.pixels) {
            const auto r = detail::read_ppm_uint(is);
            const auto g = detail::read_ppm_uint(is);
            const auto b = detail::read_ppm_uint(is);
            px = {scale(r), scale(g), scale(b)};
        }
    }
    return img;
}

inline Image read_ppm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PpmError("read_ppm: cannot open " + path.string());
    return read_ppm(in);
}

}  // namespace trinary
