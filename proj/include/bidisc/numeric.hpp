#ifndef BIDISC_NUMERIC_HPP
#define BIDISC_NUMERIC_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace bidisc {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// Absolute tolerance for angle comparisons; ties at this scale are
// resolved toward "outside" for open regions.
inline constexpr double angle_tol = 1e-12;

// Reduce an angle to [0, 2*pi).
inline double wrap_angle(double theta) {
    double t = std::fmod(theta, two_pi);
    if (t < 0.0) t += two_pi;
    if (t >= two_pi) t = 0.0;
    return t;
}

inline cplx unit(double theta) { return cplx(std::cos(theta), std::sin(theta)); }

inline bool near(double a, double b, double tol = angle_tol) { return std::abs(a - b) <= tol; }

// Nodes/weights of the n-point Gauss-Legendre rule on [-1, 1], computed by
// Newton iteration on the Legendre recurrence.
struct gauss_rule {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit gauss_rule(int n) : nodes(n), weights(n) {
        auto legendre = [n](double x, double& p, double& dp) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * x * p2 - j * p3) / (j + 1.0);
            }
            p = p1;
            dp = n * (x * p1 - p2) / (x * x - 1.0);
        };
        for (int i = 0; i < n; ++i) {
            double x = std::cos(pi * (i + 0.75) / (n + 0.5));
            double p = 0.0, dp = 1.0;
            for (int it = 0; it < 100; ++it) {
                legendre(x, p, dp);
                double dx = p / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            legendre(x, p, dp);
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

// Deterministic uniform sampling on top of mt19937_64.  The standard
// distributions are implementation-defined, so the mapping to doubles is
// done by hand to keep outputs reproducible everywhere.
struct sample_rng {
    explicit sample_rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {
        // 53-bit mantissa from the top of the generator output
        return (gen_() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform point of the open disc of given radius about a center.
    cplx in_disc(cplx center = 0.0, double radius = 1.0) {
        double r = radius * std::sqrt(uniform());
        double t = uniform(0.0, two_pi);
        return center + r * unit(t);
    }

  private:
    struct mt64 {
        explicit mt64(std::uint64_t seed) {
            s_[0] = seed ? seed : 0x9E3779B97F4A7C15ull;
            for (int i = 1; i < 312; ++i)
                s_[i] = 6364136223846793005ull * (s_[i - 1] ^ (s_[i - 1] >> 62)) + i;
            idx_ = 312;
        }
        std::uint64_t operator()() {
            if (idx_ >= 312) twist();
            std::uint64_t x = s_[idx_++];
            x ^= (x >> 29) & 0x5555555555555555ull;
            x ^= (x << 17) & 0x71D67FFFEDA60000ull;
            x ^= (x << 37) & 0xFFF7EEE000000000ull;
            x ^= (x >> 43);
            return x;
        }
      private:
        void twist() {
            for (int i = 0; i < 312; ++i) {
                std::uint64_t y = (s_[i] & 0xFFFFFFFF80000000ull) | (s_[(i + 1) % 312] & 0x7FFFFFFFull);
                std::uint64_t z = y >> 1;
                if (y & 1) z ^= 0xB5026F5AA96619E9ull;
                s_[i] = s_[(i + 156) % 312] ^ z;
            }
            idx_ = 0;
        }
        std::uint64_t s_[312];
        int idx_;
    };
    mt64 gen_;
};

// Aitken delta-squared acceleration of a sequence.  Returns the accelerated
// tail; empty if the sequence is too short.
inline std::vector<cplx> aitken(const std::vector<cplx>& s) {
    if (s.size() < 3) return {};
    std::vector<cplx> out;
    out.reserve(s.size() - 2);
    for (std::size_t k = 0; k + 2 < s.size(); ++k) {
        cplx d2 = s[k + 2] - 2.0 * s[k + 1] + s[k];
        if (std::abs(d2) < 1e-300)
            out.push_back(s[k + 2]);
        else
            out.push_back(s[k + 2] - (s[k + 2] - s[k + 1]) * (s[k + 2] - s[k + 1]) / d2);
    }
    return out;
}

// Estimate of the limit of a geometrically converging sequence by iterated
// Aitken acceleration.  error_bar is the last two-term difference of the
// final accelerated pass.
struct limit_estimate {
    bool exists = false;
    cplx value = 0.0;
    double error_bar = std::numeric_limits<double>::infinity();
};

inline limit_estimate estimate_limit(const std::vector<cplx>& samples, double tol) {
    limit_estimate r;
    if (samples.size() < 5) return r;
    // divergence screen: tail differences must not grow
    double d_prev = std::abs(samples[samples.size() - 3] - samples[samples.size() - 4]);
    double d_last = std::abs(samples[samples.size() - 1] - samples[samples.size() - 2]);
    if (d_last > 10.0 * (d_prev + 1e-300) && d_last > tol) return r;
    std::vector<cplx> acc = aitken(samples);
    if (acc.size() >= 3) acc = aitken(acc);
    if (acc.size() < 3) acc = samples;
    const std::size_t n = acc.size();
    r.error_bar = std::abs(acc[n - 1] - acc[n - 2]);
    double prev2 = std::abs(acc[n - 2] - acc[n - 3]);
    // three consecutive extrapolants within tolerance
    r.exists = (r.error_bar <= tol && prev2 <= tol);
    r.value = acc[n - 1];
    return r;
}

} // namespace bidisc

#endif
