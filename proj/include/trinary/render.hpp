#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <numbers>
#include <optional>
#include <thread>
#include <tuple>
#include <vector>

#include "trinary/forest.hpp"
#include "trinary/pair_core.hpp"
#include "trinary/ppm.hpp"

namespace trinary {

using ComplexPoint = std::complex<double>;

/// z -> (a z + b) / (c z + d) with integer entries and a d - b c = 1.
struct MobiusMap {
    std::int64_t a = 1;
    std::int64_t b = 0;
    std::int64_t c = 0;
    std::int64_t d = 1;

    [[nodiscard]] std::int64_t determinant() const {
        return checked::sub(checked::mul(a, d, "determinant"), checked::mul(b, c, "determinant"), "determinant");
    }

    /// Canonical term order: by (c, d, a, b).
    friend bool operator<(const MobiusMap& x, const MobiusMap& y) {
        return std::tie(x.c, x.d, x.a, x.b) < std::tie(y.c, y.d, y.a, y.b);
    }
    friend constexpr bool operator==(const MobiusMap&, const MobiusMap&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const MobiusMap& t) {
    return os << "[" << t.a << " " << t.b << "; " << t.c << " " << t.d << "]";
}

/// Map with bottom row (c, d) = (m, n) built from m*u + n*v = 1: (a, b) = (v, -u).
inline MobiusMap map_from_node(const CoprimePair& p, const BezoutPair& q) {
    return {q.v, checked::neg(q.u, "map_from_node"), p.m, p.n};
}

/// Map with bottom row (c, d) = (n, m): (a, b) = (u, -v).
inline MobiusMap swapped_map_from_node(const CoprimePair& p, const BezoutPair& q) {
    return {q.u, checked::neg(q.v, "swapped_map_from_node"), p.n, p.m};
}

/// Bottom rows (0,1), (1,0) and (1,1), which no tree contains.
inline constexpr std::array<MobiusMap, 3> kBaseTerms{{{1, 0, 0, 1}, {0, -1, 1, 0}, {1, 0, 1, 1}}};

enum class Motif { Exp, Identity };

struct Window {
    double x_min = -1.0;
    double x_max = 1.0;
    double y_min = 0.05;
    double y_max = 2.05;
};

struct RenderConfig {
    Window window;
    std::size_t width = 256;
    std::size_t height = 256;
    std::size_t term_depth = 5;
    bool include_base_terms = false;
    bool include_swapped = false;
    Motif motif = Motif::Exp;
    std::optional<std::filesystem::path> colormap_path;  // nullopt selects the builtin wheel
    std::filesystem::path output = "wallpaper.ppm";
    double color_scale = 1.0;  // sum value is multiplied by this before wrapping onto the colormap
    unsigned threads = 0;      // 0 = hardware concurrency

    void validate() const {
        if (!(window.x_min < window.x_max)) throw PreconditionError("render: window needs x_min < x_max");
        if (!(window.y_min > 0.0 && window.y_min < window.y_max)) {
            throw PreconditionError("render: window needs 0 < y_min < y_max");
        }
        if (width == 0 || height == 0) throw PreconditionError("render: image size must be positive");
    }
};

/// Term set: every node of both standard trees at levels 0..term_depth, plus the
/// optional swapped and base terms. Deduplicated and sorted by (c, d, a, b).
inline std::vector<MobiusMap> build_terms(std::size_t term_depth, bool include_base_terms, bool include_swapped) {
    std::vector<MobiusMap> terms;
    for (const CoprimePair root : kStandardRoots) {
        for_each_node(root, kStandardSeed, term_depth, true, [&](const NodeView& node) {
            terms.push_back(map_from_node(node.pair, node.bezout));
            if (include_swapped) terms.push_back(swapped_map_from_node(node.pair, node.bezout));
        });
    }
    if (include_base_terms) terms.insert(terms.end(), kBaseTerms.begin(), kBaseTerms.end());
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    return terms;
}

inline std::vector<MobiusMap> build_terms(const RenderConfig& cfg) {
    return build_terms(cfg.term_depth, cfg.include_base_terms, cfg.include_swapped);
}

/// (a z + b) / (c z + d), expanded over the real denominator |c z + d|^2.
/// The imaginary part is formed from the exact integer determinant so that
/// im(result) = det * im(z) / |c z + d|^2 carries no cancellation error.
inline ComplexPoint apply_map(const MobiusMap& t, ComplexPoint z) {
    const double a = static_cast<double>(t.a), b = static_cast<double>(t.b);
    const double c = static_cast<double>(t.c), d = static_cast<double>(t.d);
    const double x = z.real(), y = z.imag();
    const double den_re = c * x + d;
    const double den_im = c * y;
    const double norm = den_re * den_re + den_im * den_im;
    const double num_re = a * x + b;
    const double num_im = a * y;
    const double det = static_cast<double>(t.determinant());
    return {(num_re * den_re + num_im * den_im) / norm, det * y / norm};
}

inline ComplexPoint apply_motif(Motif motif, ComplexPoint w) {
    if (motif == Motif::Identity) return w;
    // exp(2 pi i w)
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double radius = std::exp(-two_pi * w.imag());
    const double angle = two_pi * w.real();
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

/// Sum of motif(term(z)) over the terms in the given order.
inline ComplexPoint eval_sum(std::span<const MobiusMap> terms, Motif motif, ComplexPoint z) {
    ComplexPoint total{0.0, 0.0};
    for (const auto& t : terms) total += apply_motif(motif, apply_map(t, z));
    return total;
}

/// Nearest-texel lookup on the unit torus: column from frac(re), row from frac(im).
class Colormap {
public:
    static constexpr Rgb kSentinel{0, 0, 0};
    static constexpr std::size_t kWheelSize = 256;

    explicit Colormap(Image image) : image_(std::move(image)) {
        if (image_.width == 0 || image_.height == 0) throw PreconditionError("Colormap: empty image");
    }

    /// Hue runs along columns (0 at column 0, red), value ramps down the rows
    /// from 1.0 at row 0 to 0.25 at the last row. Saturation is 1.
    static Colormap builtin_wheel() {
        Image img(kWheelSize, kWheelSize);
        for (std::size_t row = 0; row < kWheelSize; ++row) {
            const double value = 1.0 - 0.75 * static_cast<double>(row) / static_cast<double>(kWheelSize);
            for (std::size_t col = 0; col < kWheelSize; ++col) {
                const double hue = static_cast<double>(col) / static_cast<double>(kWheelSize);
                img.at(col, row) = hsv_to_rgb(hue, value);
            }
        }
        return Colormap(std::move(img));
    }

    static Colormap load(const std::optional<std::filesystem::path>& path) {
        return path ? Colormap(read_ppm(*path)) : builtin_wheel();
    }

    [[nodiscard]] Rgb sample(ComplexPoint f) const {
        if (!std::isfinite(f.real()) || !std::isfinite(f.imag())) return kSentinel;
        return image_.at(wrap(f.real(), image_.width), wrap(f.imag(), image_.height));
    }

    [[nodiscard]] const Image& image() const noexcept { return image_; }

    static std::size_t wrap(double x, std::size_t n) {
        const double frac = x - std::floor(x);
        const auto idx = static_cast<std::size_t>(frac * static_cast<double>(n));
        return std::min(idx, n - 1);  // frac can round up to 1.0 for tiny negative x
    }

    static Rgb hsv_to_rgb(double hue, double value) {
        const double h6 = hue * 6.0;
        const int sector = static_cast<int>(std::floor(h6)) % 6;
        const double f = h6 - std::floor(h6);
        const double rise = value * f;
        const double fall = value * (1.0 - f);
        double r = 0, g = 0, b = 0;
        switch (sector) {
            case 0: r = value, g = rise, b = 0; break;
            case 1: r = fall, g = value, b = 0; break;
            case 2: r = 0, g = value, b = rise; break;
            case 3: r = 0, g = fall, b = value; break;
            case 4: r = rise, g = 0, b = value; break;
            default: r = value, g = 0, b = fall; break;
        }
        auto to8 = [](double c) { return static_cast<std::uint8_t>(std::lround(std::clamp(c, 0.0, 1.0) * 255.0)); };
        return {to8(r), to8(g), to8(b)};
    }

private:
    Image image_;
};

inline Rgb colorize(ComplexPoint f, const Colormap& colormap) { return colormap.sample(f); }

/// Center of pixel (col, row); row 0 is the top edge (y_max).
inline ComplexPoint pixel_center(const RenderConfig& cfg, std::size_t col, std::size_t row) {
    const auto& w = cfg.window;
    const double x = w.x_min + (static_cast<double>(col) + 0.5) * (w.x_max - w.x_min) / static_cast<double>(cfg.width);
    const double y =
        w.y_max - (static_cast<double>(row) + 0.5) * (w.y_max - w.y_min) / static_cast<double>(cfg.height);
    return {x, y};
}

/// Renders with explicit terms and colormap. Rows are dealt round-robin to
/// threads; each pixel depends only on its own center so the raster is the
/// same for any thread count.
inline Image render(const RenderConfig& cfg, std::span<const MobiusMap> terms, const Colormap& colormap) {
    cfg.validate();
    if (terms.empty()) throw PreconditionError("render: empty term set");
    Image img(cfg.width, cfg.height);
    auto work = [&](std::size_t first_row, std::size_t stride) {
        for (std::size_t row = first_row; row < cfg.height; row += stride) {
            for (std::size_t col = 0; col < cfg.width; ++col) {
                const ComplexPoint f = eval_sum(terms, cfg.motif, pixel_center(cfg, col, row));
                img.at(col, row) = colorize(f * cfg.color_scale, colormap);
            }
        }
    };
    std::size_t threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, cfg.height);
    if (threads <= 1) {
        work(0, 1);
        return img;
    }
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    }
    return img;
}

inline Image render(const RenderConfig& cfg) {
    cfg.validate();
    const auto terms = build_terms(cfg);
    return render(cfg, terms, Colormap::load(cfg.colormap_path));
}

/// Renders and writes the P6 file named by cfg.output.
inline Image render_to_file(const RenderConfig& cfg) {
    Image img = render(cfg);
    write_ppm(cfg.output, img);
    return img;
}

}  // namespace trinary
