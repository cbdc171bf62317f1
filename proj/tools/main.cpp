// Command line frontend: thresholding, morphology, filtrations, persistence,
// bottleneck distances and SVG plots over grayscale or binary images.

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mmph/cubical.hpp"
#include "mmph/diagram.hpp"
#include "mmph/error.hpp"
#include "mmph/filtration.hpp"
#include "mmph/image.hpp"
#include "mmph/morphology.hpp"
#include "mmph/persistence.hpp"
#include "mmph/pipeline.hpp"
#include "mmph/plot.hpp"

namespace {

namespace fs = std::filesystem;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw mmph::Error("cannot open for reading: " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    return bytes;
}

void spit(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw mmph::Error("cannot open for writing: " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw mmph::Error("short write: " + path);
}

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

const std::map<std::string, mmph::ImageFormat> kFormatNames{
    {"pgm", mmph::ImageFormat::pgm_ascii},
    {"pgm-binary", mmph::ImageFormat::pgm_binary},
    {"csv", mmph::ImageFormat::csv_grid},
};

/// Shared SE-family flags: either an explicit strictly increasing index
/// list or --se-max N meaning squares 2..N (square 1 is the identity).
struct SeFamilyArgs {
    std::vector<int> indices;
    int se_max = 0;

    std::vector<int> resolve() const {
        if (!indices.empty() && se_max > 0) {
            throw mmph::InvalidIndex("give either --se-indices or --se-max, not both");
        }
        if (se_max > 0) {
            if (se_max < 2) {
                throw mmph::InvalidIndex("--se-max must be at least 2");
            }
            std::vector<int> out;
            for (int n = 2; n <= se_max; ++n) out.push_back(n);
            return out;
        }
        return indices;
    }
};

void add_se_family_flags(CLI::App* cmd, SeFamilyArgs& args) {
    cmd->add_option("--se-indices", args.indices,
                    "Explicit square SE indices, strictly increasing")
        ->delimiter(',');
    cmd->add_option("--se-max", args.se_max,
                    "Use the square SE family 2..N (square 1 is the identity)");
}

mmph::PersistenceDiagram diagram_of_grid(const mmph::EntryTimeGrid& grid) {
    return mmph::compute_persistence(mmph::build_complex(grid));
}

// ---------------------------------------------------------------- morph ---

struct MorphArgs {
    std::string op;
    std::string input;
    std::string output;
    int se_index = 2;
    std::string format = "pgm";
};

void run_morph(const MorphArgs& a) {
    const mmph::GrayscaleImage img = mmph::read_image_file(a.input);
    const mmph::StructuringElement se = mmph::square_se(a.se_index);
    mmph::GrayscaleImage out = img;
    if (a.op == "erode") out = mmph::erode(img, se);
    else if (a.op == "dilate") out = mmph::dilate(img, se);
    else if (a.op == "open") out = mmph::open(img, se);
    else out = mmph::close(img, se);
    mmph::write_image_file(out, a.output, kFormatNames.at(a.format));
}

// ----------------------------------------------------------- filtration ---

struct FiltrationArgs {
    std::string kind = "erosion";
    std::string input;
    std::string output;
    SeFamilyArgs family;
    int threshold = -1;
    int cap_state = -1;  // -1 default for kind, 0 --no-cap, 1 --cap
    std::vector<std::string> stages;
    int origin = 0;
};

mmph::EntryTimeGrid filtration_grid(const FiltrationArgs& a) {
    const mmph::FiltrationKind kind = mmph::filtration_kind_from_string(a.kind);
    if (kind == mmph::FiltrationKind::explicit_sequence) {
        if (a.stages.empty()) {
            throw mmph::Error("explicit filtrations need --stages");
        }
        std::vector<mmph::BinaryImage> stages;
        for (const std::string& path : a.stages) {
            stages.push_back(mmph::to_binary(mmph::read_image_file(path)));
        }
        return mmph::from_nested_sequence(stages, a.origin);
    }
    if (a.input.empty()) {
        throw mmph::Error("--input is required for non-explicit kinds");
    }
    const mmph::GrayscaleImage img = mmph::read_image_file(a.input);
    if (kind == mmph::FiltrationKind::sublevel) {
        return mmph::sublevel_filtration(img);
    }
    const mmph::BinaryImage binary =
        a.threshold >= 0 ? mmph::threshold(img, a.threshold) : mmph::to_binary(img);
    mmph::FiltrationSpec spec = mmph::make_spec(kind, a.family.resolve());
    if (a.cap_state >= 0) spec.cap_all_black = a.cap_state == 1;
    return mmph::mm_filtration(binary, spec);
}

void run_filtration(const FiltrationArgs& a) {
    spit(a.output, mmph::serialize_grid(filtration_grid(a)));
}

// ----------------------------------------------------------- persistence ---

struct PersistenceArgs {
    std::string input;
    std::string output;
    double divisor = 0.0;  // 0: no normalization
};

void run_persistence(const PersistenceArgs& a) {
    mmph::PersistenceDiagram pd = diagram_of_grid(mmph::parse_grid(slurp(a.input)));
    if (a.divisor != 0.0) pd = mmph::normalize(pd, a.divisor);
    spit(a.output, mmph::serialize_pd(pd));
}

// ------------------------------------------------------------ bottleneck ---

struct BottleneckArgs {
    std::string a;
    std::string b;
    double divisor = 0.0;
    std::string matching_path;
};

void run_bottleneck(const BottleneckArgs& args) {
    mmph::PersistenceDiagram pa = mmph::parse_pd(slurp(args.a));
    mmph::PersistenceDiagram pb = mmph::parse_pd(slurp(args.b));
    if (args.divisor != 0.0) {
        pa = mmph::normalize(pa, args.divisor);
        pb = mmph::normalize(pb, args.divisor);
    }
    const mmph::BottleneckResult res = mmph::bottleneck(pa, pb);
    if (res.distance == std::numeric_limits<double>::infinity()) {
        std::cout << "inf\n";
    } else {
        std::cout << format_number(res.distance) << "\n";
    }
    if (!args.matching_path.empty()) {
        std::string doc = "[";
        for (std::size_t i = 0; i < res.matching.size(); ++i) {
            doc += i == 0 ? "\n" : ",\n";
            doc += "  {\"a\": " + std::to_string(res.matching[i].index_a) +
                   ", \"b\": " + std::to_string(res.matching[i].index_b) + "}";
        }
        doc += res.matching.empty() ? "]\n" : "\n]\n";
        spit(args.matching_path, doc);
    }
}

// -------------------------------------------------------------- pipeline ---

struct PipelineArgs {
    std::string input;
    std::string out_dir;
    std::string kind = "erosion";
    SeFamilyArgs family;
    std::vector<int> thresholds;
    int cap_state = -1;
    std::string normalize = "auto";  // auto | none | <divisor>
    std::vector<int> dims = {0, 1};
    double salt = 0.0;
    std::uint64_t seed = 0;
    bool compare = false;
};

mmph::PipelineConfig pipeline_config(const PipelineArgs& a) {
    mmph::PipelineConfig cfg;
    cfg.thresholds = a.thresholds;
    cfg.filtration = mmph::make_spec(mmph::filtration_kind_from_string(a.kind),
                                     a.family.resolve());
    if (a.cap_state >= 0) cfg.filtration.cap_all_black = a.cap_state == 1;
    if (a.normalize == "none") {
        cfg.normalize_output = false;
    } else if (a.normalize != "auto") {
        double div = 0.0;
        const auto res = std::from_chars(a.normalize.data(),
                                         a.normalize.data() + a.normalize.size(), div);
        if (res.ec != std::errc() || res.ptr != a.normalize.data() + a.normalize.size()) {
            throw mmph::MalformedInput("--normalize must be auto, none or a number");
        }
        cfg.divisor = div;
    }
    cfg.dims = a.dims;
    cfg.salt_fraction = a.salt;
    cfg.salt_seed = a.seed;
    return cfg;
}

void run_pipeline(const PipelineArgs& a) {
    if (a.compare && a.salt <= 0.0) {
        throw mmph::Error("--compare needs --salt, it contrasts noisy against clean");
    }
    const mmph::GrayscaleImage img = mmph::read_image_file(a.input);
    const mmph::PipelineConfig cfg = pipeline_config(a);
    fs::create_directories(a.out_dir);

    const auto results = mmph::pipeline_grayscale(img, cfg);
    for (const auto& stage : results) {
        spit((fs::path(a.out_dir) / ("pd_t" + std::to_string(stage.threshold) + ".json"))
                 .string(),
             mmph::serialize_pd(stage.diagram));
    }

    std::vector<mmph::PipelineStageResult> clean;
    if (a.compare) {
        mmph::PipelineConfig clean_cfg = cfg;
        clean_cfg.salt_fraction = 0.0;
        clean = mmph::pipeline_grayscale(img, clean_cfg);
        for (const auto& stage : clean) {
            spit((fs::path(a.out_dir) /
                  ("pd_clean_t" + std::to_string(stage.threshold) + ".json"))
                     .string(),
                 mmph::serialize_pd(stage.diagram));
        }
    }

    std::string csv = "threshold,dim0_count,dim1_count,max_finite_death";
    if (a.compare) csv += ",bottleneck_vs_clean";
    csv += "\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const mmph::PersistenceDiagram& pd = results[i].diagram;
        double max_death = 0.0;
        for (const mmph::Interval& iv : pd.intervals) {
            if (!iv.essential()) max_death = std::max(max_death, iv.death);
        }
        csv += std::to_string(results[i].threshold) + "," +
               std::to_string(pd.count(0)) + "," + std::to_string(pd.count(1)) + "," +
               format_number(max_death);
        if (a.compare) {
            const mmph::BottleneckResult res = mmph::bottleneck(pd, clean[i].diagram);
            csv += "," + (res.distance == std::numeric_limits<double>::infinity()
                              ? std::string("inf")
                              : format_number(res.distance));
        }
        csv += "\n";
    }
    spit((fs::path(a.out_dir) / "summary.csv").string(), csv);
}

// ------------------------------------------------------------------ plot ---

struct PlotArgs {
    std::string kind = "pd";
    std::string input;
    std::string output;
    int bins = 16;
    int dim = 1;
    int width = 480;
    int height = 480;
};

void run_plot(const PlotArgs& a) {
    const mmph::PersistenceDiagram pd = mmph::parse_pd(slurp(a.input));
    mmph::PlotOptions opts;
    opts.width = a.width;
    opts.height = a.height;
    std::string svg;
    if (a.kind == "pd") {
        svg = mmph::emit_svg_diagram(pd, opts);
    } else if (a.kind == "barcode") {
        svg = mmph::emit_svg_barcode(pd, opts);
    } else {
        double hi = 0.0;
        for (const mmph::Interval& iv : pd.intervals) {
            if (iv.dim == a.dim && !iv.essential()) hi = std::max(hi, iv.death);
        }
        if (hi <= 0.0) hi = 1.0;
        svg = mmph::emit_svg_histogram(
            mmph::death_histogram(pd, a.dim, a.bins, 0.0, hi), opts);
    }
    spit(a.output, svg);
}

// ------------------------------------------------------------------ demo ---

struct DemoArgs {
    std::string out_dir;
    std::vector<int> widths = {7, 13, 21, 27};
};

/// Black 200x200 canvas with one square white hole per width, laid out in
/// rows with a 20 px margin and gap. Under the erosion filtration with
/// squares 2..max+1 each hole's class dies exactly at its side length: a
/// white pixel survives erosion by S_n only while its whole S_n window is
/// white, so a w-wide hole is filled first by S_{w+1}, at stage value w.
mmph::GrayscaleImage rect_holes_image(const std::vector<int>& widths) {
    constexpr int kCanvas = 200;
    constexpr int kGap = 20;
    mmph::GrayscaleImage img(kCanvas, kCanvas, 255);
    int x = kGap;
    int y = kGap;
    int row_height = 0;
    for (int w : widths) {
        if (w < 1) throw mmph::ValueOutOfRange("hole width must be positive");
        if (x + w > kCanvas - kGap) {
            x = kGap;
            y += row_height + kGap;
            row_height = 0;
        }
        if (x + w > kCanvas - kGap || y + w > kCanvas - kGap) {
            throw mmph::ValueOutOfRange("holes do not fit on the 200x200 canvas");
        }
        for (int dy = 0; dy < w; ++dy) {
            for (int dx = 0; dx < w; ++dx) img.set(x + dx, y + dy, 255);
        }
        x += w + kGap;
        row_height = std::max(row_height, w);
    }
    return img;
}

void run_demo(const DemoArgs& a) {
    if (a.widths.empty()) {
        throw mmph::MalformedInput("--widths needs at least one value");
    }
    fs::create_directories(a.out_dir);
    const mmph::GrayscaleImage img = rect_holes_image(a.widths);
    mmph::write_image_file(img, (fs::path(a.out_dir) / "rect_holes.pgm").string(),
                           mmph::ImageFormat::pgm_ascii);

    SeFamilyArgs family;
    family.se_max = std::max(2, *std::max_element(a.widths.begin(), a.widths.end()) + 1);
    const mmph::FiltrationSpec spec =
        mmph::make_spec(mmph::FiltrationKind::erosion, family.resolve());
    const mmph::EntryTimeGrid grid =
        mmph::mm_filtration(mmph::threshold(img, 128), spec);
    spit((fs::path(a.out_dir) / "grid.csv").string(), mmph::serialize_grid(grid));

    const mmph::PersistenceDiagram pd = diagram_of_grid(grid);
    spit((fs::path(a.out_dir) / "pd.json").string(), mmph::serialize_pd(pd));
    const mmph::PersistenceDiagram norm = mmph::normalize(pd, mmph::auto_divisor(spec));
    spit((fs::path(a.out_dir) / "pd_normalized.json").string(), mmph::serialize_pd(norm));
    spit((fs::path(a.out_dir) / "diagram.svg").string(), mmph::emit_svg_diagram(pd));
    spit((fs::path(a.out_dir) / "barcode.svg").string(), mmph::emit_svg_barcode(pd));

    std::cout << "rect-holes: " << a.widths.size() << " square hole(s), sides";
    for (int w : a.widths) std::cout << ' ' << w;
    std::cout << "\n";
    for (const mmph::Interval& iv : pd.intervals) {
        if (iv.dim != 1) continue;
        std::cout << "dim 1 class born " << format_number(iv.birth) << " dies "
                  << (iv.essential() ? std::string("never") : format_number(iv.death))
                  << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Persistent homology of 2D images under morphological filtrations"};
    app.require_subcommand(1);

    MorphArgs morph;
    CLI::App* morph_cmd =
        app.add_subcommand("morph", "Apply a morphological operator to an image");
    morph_cmd->add_option("--op", morph.op, "Operator")
        ->required()
        ->check(CLI::IsMember({"erode", "dilate", "open", "close"}));
    morph_cmd->add_option("--se", morph.se_index, "Square SE index (default 2)");
    morph_cmd->add_option("--input", morph.input, "Input image (PGM or CSV)")->required();
    morph_cmd->add_option("--output", morph.output, "Output image path")->required();
    morph_cmd->add_option("--format", morph.format, "Output format (default pgm)")
        ->check(CLI::IsMember({"pgm", "pgm-binary", "csv"}));

    FiltrationArgs filt;
    CLI::App* filt_cmd =
        app.add_subcommand("filtration", "Build an entry-time grid from an image");
    filt_cmd->add_option("--kind", filt.kind, "Filtration kind")
        ->required()
        ->check(CLI::IsMember({"erosion", "dilation", "combined-ed", "opening",
                               "closing", "combined-oc", "sublevel", "explicit"}));
    filt_cmd->add_option("--input", filt.input, "Input image");
    filt_cmd->add_option("--output", filt.output, "Output grid CSV")->required();
    add_se_family_flags(filt_cmd, filt.family);
    filt_cmd->add_option("--threshold", filt.threshold,
                         "Binarize the input at this threshold first");
    filt_cmd->add_flag(
        "--cap{1},--no-cap{0}", filt.cap_state,
        "Append (or suppress) the all-black final stage; default depends on kind");
    filt_cmd->add_option("--stages", filt.stages,
                         "Explicit nested binary images, earliest first");
    filt_cmd->add_option("--origin", filt.origin,
                         "Index of the original image among --stages");

    PersistenceArgs pers;
    CLI::App* pers_cmd = app.add_subcommand(
        "persistence", "Compute a persistence diagram from an entry-time grid");
    pers_cmd->add_option("--input", pers.input, "Input grid CSV")->required();
    pers_cmd->add_option("--output", pers.output, "Output diagram JSON")->required();
    pers_cmd->add_option("--normalize", pers.divisor,
                         "Divide coordinates by this value (omit for raw values)");

    BottleneckArgs bn;
    CLI::App* bn_cmd =
        app.add_subcommand("bottleneck", "Exact bottleneck distance of two diagrams");
    bn_cmd->add_option("--a", bn.a, "First diagram JSON")->required();
    bn_cmd->add_option("--b", bn.b, "Second diagram JSON")->required();
    bn_cmd->add_option("--normalize", bn.divisor,
                       "Normalize both diagrams by this divisor first");
    bn_cmd->add_option("--matching", bn.matching_path,
                       "Also write the optimal matching as JSON");

    PipelineArgs pipe;
    CLI::App* pipe_cmd = app.add_subcommand(
        "pipeline", "Grayscale image to per-threshold normalized diagrams");
    pipe_cmd->add_option("--input", pipe.input, "Input grayscale image")->required();
    pipe_cmd->add_option("--out-dir", pipe.out_dir, "Output directory")->required();
    pipe_cmd->add_option("--kind", pipe.kind, "Morphological filtration kind")
        ->check(CLI::IsMember({"erosion", "dilation", "combined-ed", "opening",
                               "closing", "combined-oc"}));
    add_se_family_flags(pipe_cmd, pipe.family);
    pipe_cmd->add_option("--thresholds", pipe.thresholds,
                         "Strictly increasing threshold list")
        ->required()
        ->delimiter(',');
    pipe_cmd->add_flag("--cap{1},--no-cap{0}", pipe.cap_state,
                       "Append (or suppress) the all-black final stage");
    pipe_cmd->add_option("--normalize", pipe.normalize,
                         "auto (default), none, or an explicit divisor");
    pipe_cmd->add_option("--dims", pipe.dims, "Homological dimensions to keep")
        ->delimiter(',');
    pipe_cmd->add_option("--salt", pipe.salt, "Salt noise fraction in [0, 1]");
    pipe_cmd->add_option("--seed", pipe.seed, "Salt noise seed");
    pipe_cmd->add_flag("--compare", pipe.compare,
                       "Also run without noise and report bottleneck distances");

    PlotArgs plot;
    CLI::App* plot_cmd = app.add_subcommand("plot", "Render a diagram as SVG");
    plot_cmd->add_option("--kind", plot.kind, "pd, barcode or hist")
        ->check(CLI::IsMember({"pd", "barcode", "hist"}));
    plot_cmd->add_option("--input", plot.input, "Input diagram JSON")->required();
    plot_cmd->add_option("--output", plot.output, "Output SVG path")->required();
    plot_cmd->add_option("--bins", plot.bins, "Histogram bin count (default 16)");
    plot_cmd->add_option("--dim", plot.dim, "Histogram dimension (default 1)");
    plot_cmd->add_option("--width", plot.width, "SVG width (default 480)");
    plot_cmd->add_option("--height", plot.height, "SVG height (default 480)");

    DemoArgs demo;
    CLI::App* demo_cmd = app.add_subcommand("demo", "Built-in example pipelines");
    CLI::App* rect_cmd = demo_cmd->add_subcommand(
        "rect-holes", "Four square holes dying at their side lengths");
    rect_cmd->add_option("--out-dir", demo.out_dir, "Output directory")->required();
    rect_cmd->add_option("--widths", demo.widths, "Hole side lengths")->delimiter(',');
    demo_cmd->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (morph_cmd->parsed()) run_morph(morph);
        else if (filt_cmd->parsed()) run_filtration(filt);
        else if (pers_cmd->parsed()) run_persistence(pers);
        else if (bn_cmd->parsed()) run_bottleneck(bn);
        else if (pipe_cmd->parsed()) run_pipeline(pipe);
        else if (plot_cmd->parsed()) run_plot(plot);
        else if (demo_cmd->parsed()) run_demo(demo);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
