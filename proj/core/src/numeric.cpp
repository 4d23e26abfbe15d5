#include "reflab/numeric.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace reflab {

namespace {
std::atomic<int> g_max_threads{0};

// 9-point Gauss-Legendre on [-1,1], mapped to [0,1] below.
const double kGL9X[9] = {
    -0.96816023950762608983557620290367, -0.83603110732663579429942978806973,
    -0.61337143270059039730870203934147, -0.32425342340380892903853801464334,
    0.0,
    0.32425342340380892903853801464334,  0.61337143270059039730870203934147,
    0.83603110732663579429942978806973,  0.96816023950762608983557620290367};
const double kGL9W[9] = {
    0.081274388361574411971892158110524, 0.18064816069485740405847203124291,
    0.26061069640293546231874286941863,  0.31234707704000284006863040658444,
    0.33023935500125976316452506928697,  0.31234707704000284006863040658444,
    0.26061069640293546231874286941863,  0.18064816069485740405847203124291,
    0.081274388361574411971892158110524};

struct Gauss01 {
    double x[9], w[9];
    Gauss01() {
        for (int i = 0; i < 9; ++i) {
            x[i] = 0.5 * (kGL9X[i] + 1.0);
            w[i] = 0.5 * kGL9W[i];
        }
    }
};
const Gauss01 g_gauss01;

constexpr double kFloor = 1e-300;
constexpr double kSubdivideBelow = 1e-3;
constexpr std::int64_t kAnchorBlock = 4096; // panels between fresh sin/cos anchors
} // namespace

void set_max_threads(int n) { g_max_threads.store(n < 0 ? 0 : n); }

int max_threads() {
    int n = g_max_threads.load();
    if (n > 0) return n;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
    if (n <= 0) return;
    int nt = max_threads();
    if (nt > n) nt = static_cast<int>(n);
    if (nt <= 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) {
        std::int64_t lo = n * t / nt, hi = n * (t + 1) / nt;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::int64_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                if (!failed.exchange(true)) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

double pairwise_sum(const std::vector<double>& v) {
    // iterative pairwise reduction; order depends only on v's layout
    if (v.empty()) return 0.0;
    std::vector<double> cur(v);
    while (cur.size() > 1) {
        std::size_t half = (cur.size() + 1) / 2;
        for (std::size_t i = 0; i + i + 1 < cur.size(); ++i) cur[i] = cur[2 * i] + cur[2 * i + 1];
        if (cur.size() % 2 == 1) cur[half - 1] = cur.back();
        cur.resize(half);
    }
    return cur[0];
}

const double* gauss9_nodes() { return g_gauss01.x; }
const double* gauss9_weights() { return g_gauss01.w; }

std::uint64_t SplitMix64::next() {
    state += 0x9E3779B97f4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double SplitMix64::next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

namespace {

Complex eval_direct(const std::vector<Complex>& c, const std::vector<double>& f, double y) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        double ph = kTwoPi * f[j] * y;
        s += c[j] * Complex(std::cos(ph), std::sin(ph));
    }
    return s;
}

// Plain-evaluation fallback for panels near a zero of F: halve until the
// dip is resolved or max_depth is reached, then clip.
void integrate_refined(const std::vector<Complex>& c, const std::vector<double>& f, double y0,
                       double w, double clip, int depth, double& clipped, double& floored,
                       std::int64_t& evals) {
    const double* gx = gauss9_nodes();
    const double* gw = gauss9_weights();
    double av[9];
    double mn = 1e308;
    for (int i = 0; i < 9; ++i) {
        av[i] = std::abs(eval_direct(c, f, y0 + w * gx[i]));
        mn = std::min(mn, av[i]);
    }
    evals += 9;
    if (mn < kSubdivideBelow && depth > 0) {
        integrate_refined(c, f, y0, 0.5 * w, clip, depth - 1, clipped, floored, evals);
        integrate_refined(c, f, y0 + 0.5 * w, 0.5 * w, clip, depth - 1, clipped, floored, evals);
        return;
    }
    double sc = 0.0, sf = 0.0;
    for (int i = 0; i < 9; ++i) {
        sc += gw[i] * std::log(std::max(av[i], clip));
        sf += gw[i] * std::log(std::max(av[i], kFloor));
    }
    clipped += w * sc;
    floored += w * sf;
}

} // namespace

LogIntegralResult log_abs_line_integral(const std::vector<Complex>& coeffs,
                                        const std::vector<double>& freqs, double ell,
                                        int panels_per_unit, double clip, int max_depth) {
    if (ell <= 0.0 || coeffs.empty() || coeffs.size() != freqs.size())
        throw std::invalid_argument("log_abs_line_integral: bad arguments");
    if (clip <= 0.0) clip = kFloor;

    const std::size_t m = coeffs.size();
    const std::int64_t npanels = std::max<std::int64_t>(1, static_cast<std::int64_t>(
                                                               std::ceil(2.0 * ell * panels_per_unit)));
    const double w = 2.0 * ell / static_cast<double>(npanels);
    const double a = -ell;
    const double* gx = gauss9_nodes();
    const double* gw = gauss9_weights();

    // per-frequency panel rotation and in-panel node phases
    std::vector<Complex> rot(m), node_phase(m * 9);
    for (std::size_t j = 0; j < m; ++j) {
        rot[j] = std::polar(1.0, kTwoPi * freqs[j] * w);
        for (int i = 0; i < 9; ++i)
            node_phase[j * 9 + i] = std::polar(1.0, kTwoPi * freqs[j] * w * gx[i]);
    }

    const std::int64_t nblocks = (npanels + kAnchorBlock - 1) / kAnchorBlock;
    std::vector<double> block_clipped(nblocks), block_floored(nblocks);
    std::vector<std::int64_t> block_evals(nblocks);

    parallel_for(nblocks, [&](std::int64_t b) {
        const std::int64_t p0 = b * kAnchorBlock;
        const std::int64_t p1 = std::min(npanels, p0 + kAnchorBlock);
        // fresh anchor at the block start keeps rotation drift ~1e-13
        std::vector<Complex> base(m);
        for (std::size_t j = 0; j < m; ++j)
            base[j] = coeffs[j] * std::polar(1.0, kTwoPi * freqs[j] * (a + w * static_cast<double>(p0)));
        double sum_c = 0.0, sum_f = 0.0;
        std::int64_t evals = 0;
        for (std::int64_t p = p0; p < p1; ++p) {
            double av[9];
            double mn = 1e308;
            for (int i = 0; i < 9; ++i) {
                Complex s = 0.0;
                for (std::size_t j = 0; j < m; ++j) s += base[j] * node_phase[j * 9 + i];
                av[i] = std::abs(s);
                mn = std::min(mn, av[i]);
            }
            evals += 9;
            if (mn < kSubdivideBelow && max_depth > 0) {
                integrate_refined(coeffs, freqs, a + w * static_cast<double>(p), w, clip,
                                  max_depth, sum_c, sum_f, evals);
            } else {
                double sc = 0.0, sf = 0.0;
                for (int i = 0; i < 9; ++i) {
                    sc += gw[i] * std::log(std::max(av[i], clip));
                    sf += gw[i] * std::log(std::max(av[i], kFloor));
                }
                sum_c += w * sc;
                sum_f += w * sf;
            }
            for (std::size_t j = 0; j < m; ++j) base[j] *= rot[j];
        }
        block_clipped[b] = sum_c;
        block_floored[b] = sum_f;
        block_evals[b] = evals;
    });

    LogIntegralResult r;
    r.clipped = pairwise_sum(block_clipped);
    r.floored = pairwise_sum(block_floored);
    r.evaluations = 0;
    for (auto e : block_evals) r.evaluations += e;
    return r;
}

} // namespace reflab
