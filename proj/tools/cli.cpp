#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "juniward/analysis.hpp"
#include "juniward/container_io.hpp"
#include "juniward/costmap.hpp"
#include "juniward/embed.hpp"
#include "juniward/errors.hpp"

namespace juniward::cli {

namespace {

namespace fs = std::filesystem;

const std::map<std::string, WindowMode> kModes{{"original", WindowMode::Original}, {"fixed", WindowMode::Fixed}};
const std::map<std::string, StripePattern> kPatterns{{"stripes_h", StripePattern::Horizontal},
                                                     {"stripes_2d", StripePattern::TwoD}};

const char* mode_name(WindowMode m) { return m == WindowMode::Original ? "original" : "fixed"; }

struct Config {
    std::size_t threads = 0;
    std::string input;
    std::string output;
    std::string out_dir;
    WindowMode mode = WindowMode::Fixed;
    double sigma = 0x1.0p-6;
    double payload = 0.0;
    std::uint64_t seed = 0;
    StripePattern pattern = StripePattern::Horizontal;
    std::size_t width = 200;
    std::size_t height = 40;
    int quality = 75;
    double contrast = SynthOptions{}.contrast;
    std::vector<int> qualities{30, 75, 95};
};

void add_mode(CLI::App* cmd, Config& cfg) {
    cmd->add_option("--mode", cfg.mode, "Residual window: original | fixed")
        ->transform(CLI::CheckedTransformer(kModes, CLI::ignore_case))
        ->default_str("fixed");
}

void add_sigma(CLI::App* cmd, Config& cfg) {
    cmd->add_option("--sigma", cfg.sigma, "Stabilizing constant")->check(CLI::PositiveNumber)->capture_default_str();
}

void add_payload(CLI::App* cmd, Config& cfg) {
    const double max_rate = std::log2(3.0);
    cmd->add_option("--payload", cfg.payload, "Payload in bits per nonzero AC coefficient")
        ->required()
        ->check(CLI::Validator(
            [max_rate](const std::string& text) -> std::string {
                double v = 0.0;
                if (!CLI::detail::lexical_cast(text, v) || !(v > 0.0) || v > max_rate) {
                    return "payload must lie in (0, log2 3]";
                }
                return {};
            },
            "PAYLOAD"));
}

void add_synth_options(CLI::App* cmd, Config& cfg) {
    cmd->add_option("--pattern", cfg.pattern, "stripes_h | stripes_2d")
        ->transform(CLI::CheckedTransformer(kPatterns))
        ->default_str("stripes_h");
    cmd->add_option("--width", cfg.width, "Width in pixels (multiple of 8)")->capture_default_str();
    cmd->add_option("--height", cfg.height, "Height in pixels (multiple of 8)")->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "Texture seed")->capture_default_str();
    cmd->add_option("--contrast", cfg.contrast, "Texture contrast; 1 gives uniform noise on [0,255]")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
}

SynthOptions synth_options(const Config& cfg, int quality) {
    SynthOptions o;
    o.pattern = cfg.pattern;
    o.width = cfg.width;
    o.height = cfg.height;
    o.quality = quality;
    o.seed = cfg.seed;
    o.contrast = cfg.contrast;
    return o;
}

CostParams cost_params(const Config& cfg) {
    CostParams p;
    p.sigma = cfg.sigma;
    return p;
}

std::vector<std::vector<double>> scatter_rows(const std::vector<std::array<double, 2>>& points) {
    std::vector<std::vector<double>> rows;
    rows.reserve(points.size());
    for (const auto& [a, b] : points) rows.push_back({a, b});
    return rows;
}

nlohmann::json mode_summary(const ProbMap& pm, const RealMatrix& blocks) {
    double sum = 0.0;
    for (double v : blocks.values()) sum += v;
    return {{"lambda", pm.lambda},
            {"target_payload_bits", pm.target_payload},
            {"achieved_payload_bits", pm.achieved_payload},
            {"mean_block_cost", sum / static_cast<double>(blocks.size())}};
}

void run_compare(const Config& cfg, std::ostream& out) {
    const DctContainer c = read_container(cfg.input);
    const AnalysisReport rep = compare(c, cost_params(cfg), cfg.payload, cfg.threads);

    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) throw IoError("cannot create " + cfg.out_dir + ": " + ec.message());
    const fs::path dir(cfg.out_dir);

    write_grid(rep.block_orig, dir / "block_orig.tsv", GridFormat::Tsv);
    write_grid(rep.block_fixed, dir / "block_fixed.tsv", GridFormat::Tsv);
    write_grid(rep.block_diff, dir / "block_diff.tsv", GridFormat::Tsv);
    write_csv({"orig_cost", "fixed_cost"}, scatter_rows(rep.scatter_blocks), dir / "scatter_blocks.csv");
    write_csv({"orig_p", "fixed_p"}, scatter_rows(rep.scatter_probs), dir / "scatter_probs.csv");

    const nlohmann::json summary{
        {"input", cfg.input},
        {"height", c.height()},
        {"width", c.width()},
        {"block_rows", c.block_rows()},
        {"block_cols", c.block_cols()},
        {"sigma", rep.sigma},
        {"payload_bpnzac", rep.payload},
        {"nzac", rep.nzac},
        {"max_abs_block_diff", rep.summary.max_abs_diff},
        {"mean_abs_block_diff", rep.summary.mean_abs_diff},
        {"max_block_cost", rep.summary.max_block_cost},
        {"max_relative_deviation_blocks", max_relative_deviation(rep.scatter_blocks)},
        {"max_relative_deviation_probs", max_relative_deviation(rep.scatter_probs)},
        {"modes",
         {{"original", mode_summary(rep.probs_orig, rep.block_orig)},
          {"fixed", mode_summary(rep.probs_fixed, rep.block_fixed)}}},
    };
    write_text(dir / "summary.json", summary.dump(2) + "\n");
    out << "max |block diff| " << format_real(rep.summary.max_abs_diff) << ", mean |block diff| "
        << format_real(rep.summary.mean_abs_diff) << ", max block cost " << format_real(rep.summary.max_block_cost)
        << "\n";
}

void run_embed(const Config& cfg, std::ostream& out) {
    const DctContainer c = read_container(cfg.input);
    const CostMap cm = compute_costmap(c, cfg.mode, cost_params(cfg), cfg.threads);
    const ProbMap pm = solve_lambda(cm, cfg.payload);
    const DctContainer stego = simulate(pm, c, cfg.seed, cfg.threads);
    write_container(stego, cfg.output);

    std::size_t changes = 0;
    for (std::size_t i = 0; i < c.coeffs.size(); ++i) changes += c.coeffs.values()[i] != stego.coeffs.values()[i];
    out << "mode " << mode_name(cfg.mode) << ", lambda " << format_real(pm.lambda) << ", payload "
        << format_real(pm.achieved_payload) << " bits, " << changes << " changes\n";
}

void run_sweep(const Config& cfg, std::ostream& out) {
    for (int q : cfg.qualities) {
        if (q < 1 || q > 100) throw ValidationError("quality " + std::to_string(q) + " outside [1, 100]");
    }
    const auto rows = quality_sweep(synth_options(cfg, cfg.qualities.front()), cfg.qualities, {}, cfg.threads);
    std::vector<std::vector<double>> table;
    for (const auto& r : rows) {
        table.push_back({static_cast<double>(r.quality), r.mean_block_cost_fixed, r.mean_abs_block_diff});
        out << "quality " << r.quality << ": mean block cost " << format_real(r.mean_block_cost_fixed)
            << ", mean |diff| " << format_real(r.mean_abs_block_diff) << "\n";
    }
    write_csv({"quality", "mean_block_cost_fixed", "mean_abs_block_diff"}, table, cfg.output);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config cfg;
    CLI::App app{"J-UNIWARD costmaps with original and fixed residual windows", "juniward"};
    app.require_subcommand(1);
    app.add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->capture_default_str();

    auto* costmap = app.add_subcommand("costmap", "Per-coefficient costs as TSV");
    costmap->add_option("--input", cfg.input, "DCTC v1 container")->required();
    add_mode(costmap, cfg);
    add_sigma(costmap, cfg);
    costmap->add_option("--output", cfg.output, "Output TSV")->required();

    auto* blockcost = app.add_subcommand("blockcost", "Per-block costs (unit numerator) as TSV");
    blockcost->add_option("--input", cfg.input, "DCTC v1 container")->required();
    add_mode(blockcost, cfg);
    add_sigma(blockcost, cfg);
    blockcost->add_option("--output", cfg.output, "Output TSV")->required();

    auto* cmp = app.add_subcommand("compare", "Original vs fixed block costs and probabilities");
    cmp->add_option("--input", cfg.input, "DCTC v1 container")->required();
    add_payload(cmp, cfg);
    add_sigma(cmp, cfg);
    cmp->add_option("--out-dir", cfg.out_dir, "Output directory")->required();

    auto* embed = app.add_subcommand("embed", "Simulated ternary embedding");
    embed->add_option("--input", cfg.input, "DCTC v1 container")->required();
    add_mode(embed, cfg);
    add_payload(embed, cfg);
    add_sigma(embed, cfg);
    embed->add_option("--seed", cfg.seed, "Simulator seed")->capture_default_str();
    embed->add_option("--output", cfg.output, "Stego container")->required();

    auto* synth = app.add_subcommand("synth", "Synthetic smooth/textured stripe cover");
    add_synth_options(synth, cfg);
    synth->add_option("--quality", cfg.quality, "JPEG quality")->check(CLI::Range(1, 100))->capture_default_str();
    synth->add_option("--output", cfg.output, "Output container")->required();

    auto* sweep = app.add_subcommand("sweep", "Block-cost statistics across JPEG qualities");
    add_synth_options(sweep, cfg);
    sweep->add_option("--qualities", cfg.qualities, "Comma-separated qualities")->delimiter(',')->capture_default_str();
    sweep->add_option("--output", cfg.output, "Output CSV")->required();

    auto* render = app.add_subcommand("render", "TSV grid to binary PGM");
    render->add_option("--input", cfg.input, "Input TSV")->required();
    render->add_option("--output", cfg.output, "Output PGM")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kValidationError;
    }

    try {
        if (costmap->parsed()) {
            const CostMap cm = compute_costmap(read_container(cfg.input), cfg.mode, cost_params(cfg), cfg.threads);
            write_grid(cm.rho, cfg.output, GridFormat::Tsv);
        } else if (blockcost->parsed()) {
            const RealMatrix b = block_costs(read_container(cfg.input), cfg.mode, cost_params(cfg), cfg.threads);
            write_grid(b, cfg.output, GridFormat::Tsv);
        } else if (cmp->parsed()) {
            run_compare(cfg, out);
        } else if (embed->parsed()) {
            run_embed(cfg, out);
        } else if (synth->parsed()) {
            write_container(synth_cover(synth_options(cfg, cfg.quality)), cfg.output);
        } else if (sweep->parsed()) {
            run_sweep(cfg, out);
        } else if (render->parsed()) {
            write_grid(read_tsv(cfg.input), cfg.output, GridFormat::Pgm);
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kValidationError;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    }
    return kOk;
}

}  // namespace juniward::cli
