// Acceptance gate: one criterion per line, hard time budgets, nonzero exit
// on any failure. Needs --cli <path-to-mmph-binary> for the end-to-end and
// determinism checks.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "mmph/cubical.hpp"
#include "mmph/diagram.hpp"
#include "mmph/filtration.hpp"
#include "mmph/image.hpp"
#include "mmph/morphology.hpp"
#include "mmph/persistence.hpp"
#include "mmph/pipeline.hpp"
#include "mmph/plot.hpp"

namespace fs = std::filesystem;
using namespace mmph;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string g_cli;  // path to the CLI binary

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw Failure(msg);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void run_cli(const std::string& args) {
    const std::string cmd = g_cli + " " + args;
    const int rc = std::system(cmd.c_str());
    require(rc == 0, "command failed: " + cmd);
}

bool run_criterion(int id, const std::string& title, double budget_s,
                   const std::function<void()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string error;
    try {
        body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (error.empty() && elapsed > budget_s) {
        error = "over budget (" + std::to_string(budget_s) + " s)";
    }
    char line[512];
    std::snprintf(line, sizeof(line), "[%s] %d. %s (%.2f s)%s%s",
                  error.empty() ? "PASS" : "FAIL", id, title.c_str(), elapsed,
                  error.empty() ? "" : ": ", error.c_str());
    std::cout << line << std::endl;
    return error.empty();
}

// --------------------------------------------------------------- helpers ---

PersistenceDiagram make_pd(std::vector<Interval> intervals) {
    PersistenceDiagram pd;
    pd.intervals = std::move(intervals);
    pd.canonicalize();
    return pd;
}

PersistenceDiagram dim_slice(const PersistenceDiagram& pd, int dim) {
    PersistenceDiagram out;
    out.scale = pd.scale;
    for (const Interval& iv : pd.intervals) {
        if (iv.dim == dim) out.intervals.push_back(iv);
    }
    return out;
}

PersistenceDiagram diagram_of(const EntryTimeGrid& grid) {
    PersistenceDiagram pd = compute_persistence(build_complex(grid));
    pd.canonicalize();
    return pd;
}

std::string pd_to_string(const PersistenceDiagram& pd) {
    std::string s = "{";
    for (const Interval& iv : pd.intervals) {
        s += " (" + std::to_string(iv.dim) + ": " + std::to_string(iv.birth) + "," +
             (iv.essential() ? std::string("inf") : std::to_string(iv.death)) + ")";
    }
    return s + " }";
}

/// Synthetic grayscale scene: a smooth diagonal gradient with six dark,
/// well separated disks. No thin structures, so the clean image carries no
/// dimension-1 classes at the probed thresholds.
GrayscaleImage gradient_blobs_image() {
    const int kSize = 200;
    std::vector<int> values(static_cast<std::size_t>(kSize) * kSize);
    const struct {
        int cx, cy, r;
    } blobs[6] = {{35, 35, 14},   {100, 40, 12}, {165, 45, 14},
                  {45, 115, 13},  {110, 120, 15}, {160, 165, 14}};
    for (int y = 0; y < kSize; ++y) {
        for (int x = 0; x < kSize; ++x) {
            int v = 30 + (140 * (x + y)) / (2 * (kSize - 1));
            for (const auto& b : blobs) {
                const int dx = x - b.cx;
                const int dy = y - b.cy;
                if (dx * dx + dy * dy <= b.r * b.r) v = 10;
            }
            values[static_cast<std::size_t>(y) * kSize + x] = v;
        }
    }
    return GrayscaleImage(kSize, kSize, std::move(values), 255);
}

// ------------------------------------------------------------- criteria ---

void criterion_fixture5x5() {
    const PersistenceDiagram pd = diagram_of(sublevel_filtration(mmph_test::fixture5x5()));
    const PersistenceDiagram expected = mmph_test::fixture5x5_pd();
    require(pd == expected,
            "fixture diagram mismatch: got " + pd_to_string(pd) + ", want " +
                pd_to_string(expected));
}

void criterion_rect_holes() {
    const fs::path dir = fs::path("acceptance_tmp") / "rect";
    fs::remove_all(dir);
    fs::create_directories(dir);
    run_cli("demo rect-holes --out-dir " + dir.string() + " > " +
            (dir / "stdout.txt").string());

    // Independent oracle: erode the reconstructed field level by level and
    // watch the loop count from the pixel-level Betti oracle.
    const GrayscaleImage img = read_image_file((dir / "rect_holes.pgm").string());
    const BinaryImage f = threshold(img, 128);
    const std::vector<int> widths{7, 13, 21, 27};
    const int cap_level = 28;  // squares 2..28, all-black at 28
    std::vector<long long> b1(static_cast<std::size_t>(cap_level) + 1);
    b1[0] = betti_oracle(f).b1;
    require(b1[0] == static_cast<long long>(widths.size()),
            "expected one initial loop per hole, got " + std::to_string(b1[0]));
    for (int v = 1; v < cap_level; ++v) {
        b1[static_cast<std::size_t>(v)] = betti_oracle(erode(f, square_se(v + 1))).b1;
    }
    b1[static_cast<std::size_t>(cap_level)] = 0;
    std::vector<double> oracle_deaths;
    for (int v = 1; v <= cap_level; ++v) {
        for (long long k = b1[static_cast<std::size_t>(v)];
             k < b1[static_cast<std::size_t>(v - 1)]; ++k) {
            oracle_deaths.push_back(static_cast<double>(v));
        }
    }

    const PersistenceDiagram pd = parse_pd(slurp(dir / "pd.json"));
    const PersistenceDiagram dim1 = dim_slice(pd, 1);
    require(dim1.intervals.size() == widths.size(),
            "expected exactly one PD_1 interval per hole, got " +
                std::to_string(dim1.intervals.size()));
    std::vector<double> deaths;
    for (const Interval& iv : dim1.intervals) {
        require(iv.birth == 0.0, "PD_1 interval not born at 0");
        require(!iv.essential(), "PD_1 interval never dies despite the cap");
        deaths.push_back(iv.death);
    }
    std::sort(deaths.begin(), deaths.end());
    std::sort(oracle_deaths.begin(), oracle_deaths.end());
    require(deaths == oracle_deaths, "PD_1 deaths disagree with the erosion oracle");
    for (std::size_t k = 0; k < widths.size(); ++k) {
        require(deaths[k] == static_cast<double>(widths[k]),
                "death " + std::to_string(deaths[k]) + " is not the hole width " +
                    std::to_string(widths[k]));
    }
}

void criterion_oracle_sweep() {
    auto rng = mmph_test::make_rng(20240301);
    for (int it = 0; it < 500; ++it) {
        const int w = 1 + static_cast<int>(rng() % 12);
        const int h = 1 + static_cast<int>(rng() % 12);
        const int levels = 1 + static_cast<int>(rng() % 6);
        const EntryTimeGrid grid = mmph_test::random_grid(rng, w, h, levels);
        const PersistenceDiagram pd = compute_persistence(build_complex(grid));
        for (int t = 0; t <= grid.max_level(); ++t) {
            const BettiNumbers want = betti_oracle(grid.level_set(t));
            require(betti_at(pd, 0, t) == want.b0,
                    "b0 mismatch at level " + std::to_string(t));
            require(betti_at(pd, 1, t) == want.b1,
                    "b1 mismatch at level " + std::to_string(t));
        }
    }
}

void criterion_bottleneck() {
    {
        const auto r = bottleneck(make_pd({{0, 0.0, 1.0}}), make_pd({}));
        require(std::abs(r.distance - 0.5) <= 1e-12,
                "d({(0,1)},{}) = " + std::to_string(r.distance) + ", want 0.5");
    }
    {
        const auto r = bottleneck(make_pd({{0, 0.0, 2.0}}), make_pd({{0, 0.0, 4.0}}));
        require(std::abs(r.distance - 2.0) <= 1e-12,
                "d({(0,2)},{(0,4)}) = " + std::to_string(r.distance) + ", want 2.0");
    }
    auto rng = mmph_test::make_rng(424242);
    const auto random_pd = [&rng]() {
        std::vector<Interval> ivs;
        const int n = static_cast<int>(rng() % 7);
        for (int i = 0; i < n; ++i) {
            const int dim = static_cast<int>(rng() % 2);
            const double birth = static_cast<double>(rng() % 8);
            if (rng() % 5 == 0) {
                ivs.push_back({dim, birth, kInf});
            } else {
                ivs.push_back({dim, birth, birth + 1.0 + static_cast<double>(rng() % 6)});
            }
        }
        return make_pd(std::move(ivs));
    };
    for (int it = 0; it < 200; ++it) {
        const PersistenceDiagram a = random_pd();
        const PersistenceDiagram b = random_pd();
        const double want = mmph_test::brute_bottleneck(a, b);
        const auto r = bottleneck(a, b);
        if (std::isinf(want)) {
            require(std::isinf(r.distance), "expected infinite distance");
        } else {
            require(std::abs(r.distance - want) <= 1e-12,
                    "distance " + std::to_string(r.distance) + " vs brute force " +
                        std::to_string(want));
        }
    }
}

void criterion_robustness() {
    const GrayscaleImage img = gradient_blobs_image();
    const std::vector<int> thresholds{50, 100, 150};

    PipelineConfig clean_cfg;
    clean_cfg.thresholds = thresholds;
    clean_cfg.filtration = make_spec(FiltrationKind::opening, {2, 3});
    clean_cfg.dims = {1};
    const auto clean_mm = pipeline_grayscale(img, clean_cfg);
    const PersistenceDiagram clean_sub =
        normalize(diagram_of(sublevel_filtration(img)), img.max_value());

    double mm_sum = 0.0;
    int mm_n = 0;
    double sub_sum = 0.0;
    int sub_n = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        PipelineConfig noisy_cfg = clean_cfg;
        noisy_cfg.salt_fraction = 0.01;
        noisy_cfg.salt_seed = seed;
        const auto noisy_mm = pipeline_grayscale(img, noisy_cfg);
        for (std::size_t i = 0; i < thresholds.size(); ++i) {
            const double d = bottleneck(noisy_mm[i].diagram, clean_mm[i].diagram).distance;
            require(std::isfinite(d), "morphological distance is infinite");
            mm_sum += d;
            ++mm_n;
        }
        const GrayscaleImage noisy = add_salt_noise(img, 0.01, seed);
        const PersistenceDiagram noisy_sub =
            normalize(diagram_of(sublevel_filtration(noisy)), img.max_value());
        const double d =
            bottleneck(dim_slice(noisy_sub, 1), dim_slice(clean_sub, 1)).distance;
        require(std::isfinite(d), "sublevel distance is infinite");
        sub_sum += d;
        ++sub_n;
    }
    const double mm_mean = mm_sum / mm_n;
    const double sub_mean = sub_sum / sub_n;
    require(sub_mean > 0.0, "sublevel comparison degenerated to zero");
    require(mm_mean < 0.5 * sub_mean,
            "opening mean " + std::to_string(mm_mean) + " not below half of sublevel mean " +
                std::to_string(sub_mean));
}

void criterion_morphology() {
    auto rng = mmph_test::make_rng(777);
    const auto random_image = [&rng](int maxv) {
        return mmph_test::random_grayscale(rng, 1 + static_cast<int>(rng() % 10),
                                           1 + static_cast<int>(rng() % 10), maxv);
    };

    // Monotonicity in the image argument, extensivity sandwich, opening /
    // closing around the identity, idempotence.
    for (int it = 0; it < 200; ++it) {
        const GrayscaleImage f = random_image(20);
        GrayscaleImage g = f;
        for (int y = 0; y < g.height(); ++y) {
            for (int x = 0; x < g.width(); ++x) {
                g.set(x, y, std::min(20, g.at(x, y) + static_cast<int>(rng() % 4)));
            }
        }
        const StructuringElement se =
            mmph_test::random_se(rng, 2, static_cast<int>(rng() % 6));
        require(image_leq(erode(f, se), erode(g, se)), "erosion not increasing");
        require(image_leq(dilate(f, se), dilate(g, se)), "dilation not increasing");
        require(image_leq(open(f, se), open(g, se)), "opening not increasing");
        require(image_leq(close(f, se), close(g, se)), "closing not increasing");
        require(image_leq(erode(f, se), f), "erosion not anti-extensive");
        require(image_leq(f, dilate(f, se)), "dilation not extensive");
        require(image_leq(open(f, se), f), "opening not under the identity");
        require(image_leq(f, close(f, se)), "closing not over the identity");
        require(open(open(f, se), se) == open(f, se), "opening not idempotent");
        require(close(close(f, se), se) == close(f, se), "closing not idempotent");
    }

    // Square-family filtrations are nested for every kind (the constructor
    // machine-checks nestedness and throws otherwise).
    const std::vector<FiltrationKind> kinds{
        FiltrationKind::erosion,     FiltrationKind::dilation,
        FiltrationKind::combined_ed, FiltrationKind::opening,
        FiltrationKind::closing,     FiltrationKind::combined_oc};
    for (int it = 0; it < 200; ++it) {
        const BinaryImage f =
            mmph_test::random_binary(rng, 1 + static_cast<int>(rng() % 12),
                                     1 + static_cast<int>(rng() % 12),
                                     20 + static_cast<int>(rng() % 60));
        std::vector<int> idx;
        for (int n = 2; n <= 2 + static_cast<int>(rng() % 3); ++n) idx.push_back(n);
        const EntryTimeGrid grid = mm_filtration(f, make_spec(kinds[it % kinds.size()], idx));
        require(grid.level_set(grid.origin_offset()) == f,
                "original image missing from its own filtration");
    }

    // Bifiltration squares commute for all four operators.
    for (int it = 0; it < 200; ++it) {
        const GrayscaleImage f = random_image(8);
        const int n1 = 1 + static_cast<int>(rng() % 3);
        const int n2 = n1 + static_cast<int>(rng() % 3);
        const int t1 = static_cast<int>(rng() % 9);
        const int t2 = t1 + static_cast<int>(rng() % (9 - t1 + 1));
        for (FiltrationKind op : {FiltrationKind::erosion, FiltrationKind::dilation,
                                  FiltrationKind::opening, FiltrationKind::closing}) {
            require(verify_bifiltration_square(f, op, n1, n2, t1, t2),
                    "bifiltration square does not commute");
        }
    }
}

void criterion_locality() {
    // All-black 40x40 field with two congruent 5x5 holes: one behind a one
    // pixel wall at the left edge, one deep inside. Every dilation by S_3
    // or larger reaches one step towards -x and erases the wall, opening
    // the near hole to the border; only S_2 (whose reflected window spreads
    // white towards +x/+y exclusively) spares it. So the near loop exists
    // at values 3..4 while the far loop spans the whole filtration.
    BinaryImage f(40, 40, std::uint8_t{0});
    for (int y = 17; y <= 21; ++y) {
        for (int x = 1; x <= 5; ++x) f.set(x, y, 1);
        for (int x = 25; x <= 29; ++x) f.set(x, y, 1);
    }
    FiltrationSpec spec = make_spec(FiltrationKind::dilation, {2, 3, 4, 5});
    spec.cap_all_black = true;
    const PersistenceDiagram pd = diagram_of(mm_filtration(f, spec));
    const PersistenceDiagram dim1 = dim_slice(pd, 1);
    require(dim1.intervals.size() == 2,
            "expected two PD_1 intervals, got " + pd_to_string(dim1));
    const Interval far_hole = dim1.intervals[0];
    const Interval near_hole = dim1.intervals[1];
    require(far_hole.birth == 0.0 && far_hole.death == 5.0,
            "far hole interval is " + pd_to_string(dim1));
    require(near_hole.birth == 3.0 && near_hole.death == 5.0,
            "near hole interval is " + pd_to_string(dim1));
    require(near_hole.lifespan() < far_hole.lifespan(),
            "near-boundary hole does not have the shorter lifespan");
}

void criterion_determinism() {
    const fs::path base = fs::path("acceptance_tmp");
    const auto run_everything = [&](const fs::path& dir) {
        fs::remove_all(dir);
        fs::create_directories(dir);
        const std::string d = dir.string();
        run_cli("demo rect-holes --out-dir " + d + "/demo > " + d + "/demo_stdout.txt");
        run_cli("morph --op open --se 3 --input " + d + "/demo/rect_holes.pgm --output " +
                d + "/opened.pgm");
        run_cli("morph --op dilate --se 2 --input " + d +
                "/demo/rect_holes.pgm --format csv --output " + d + "/dilated.csv");
        run_cli("filtration --kind combined-ed --se-max 3 --threshold 128 --input " + d +
                "/demo/rect_holes.pgm --output " + d + "/grid.csv");
        run_cli("persistence --input " + d + "/grid.csv --output " + d + "/pd.json");
        run_cli("bottleneck --a " + d + "/pd.json --b " + d +
                "/demo/pd.json --matching " + d + "/match.json > " + d + "/bn.txt");
        run_cli("pipeline --input " + d + "/demo/rect_holes.pgm --out-dir " + d +
                "/pipe --kind opening --se-indices 2,3 --thresholds 64,128"
                " --salt 0.01 --seed 7 --compare > " + d + "/pipe_stdout.txt");
        run_cli("plot --kind pd --input " + d + "/pd.json --output " + d + "/pd.svg");
        run_cli("plot --kind barcode --input " + d + "/pd.json --output " + d +
                "/barcode.svg");
        run_cli("plot --kind hist --bins 12 --dim 1 --input " + d +
                "/pd.json --output " + d + "/hist.svg");
    };
    run_everything(base / "det_a");
    run_everything(base / "det_b");

    // Byte-compare the full trees.
    std::map<std::string, std::string> a_files;
    for (const auto& entry : fs::recursive_directory_iterator(base / "det_a")) {
        if (!entry.is_regular_file()) continue;
        a_files[fs::relative(entry.path(), base / "det_a").string()] = slurp(entry.path());
    }
    require(!a_files.empty(), "first run produced no files");
    std::size_t b_count = 0;
    for (const auto& entry : fs::recursive_directory_iterator(base / "det_b")) {
        if (!entry.is_regular_file()) continue;
        ++b_count;
        const std::string rel = fs::relative(entry.path(), base / "det_b").string();
        const auto it = a_files.find(rel);
        require(it != a_files.end(), "file " + rel + " only exists in the second run");
        require(it->second == slurp(entry.path()), "file " + rel + " differs between runs");
    }
    require(b_count == a_files.size(), "runs produced different file sets");
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--cli") g_cli = argv[i + 1];
    }
    if (g_cli.empty()) {
        std::cerr << "usage: acceptance --cli <path-to-mmph-binary>\n";
        return 2;
    }

    int failures = 0;
    failures += !run_criterion(1, "5x5 nested fixture yields the exact diagram", 1.0,
                               criterion_fixture5x5);
    failures += !run_criterion(2, "rectangular hole widths match the erosion oracle", 30.0,
                               criterion_rect_holes);
    failures += !run_criterion(3, "betti numbers agree with the pixel oracle on 500 grids",
                               60.0, criterion_oracle_sweep);
    failures += !run_criterion(4, "bottleneck distance is exact against brute force", 30.0,
                               criterion_bottleneck);
    failures += !run_criterion(5, "opening filtration shrugs off salt noise", 120.0,
                               criterion_robustness);
    failures += !run_criterion(6, "morphology property suite holds under fuzzing", 60.0,
                               criterion_morphology);
    failures += !run_criterion(7, "near-boundary hole lives strictly shorter", 5.0,
                               criterion_locality);
    failures += !run_criterion(8, "every CLI invocation is byte-deterministic", 60.0,
                               criterion_determinism);

    if (failures > 0) {
        std::cout << failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all acceptance criteria passed" << std::endl;
    return 0;
}
