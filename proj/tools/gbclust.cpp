// gbclust: generate granular balls, cluster them, evaluate, benchmark.
//
// Exit codes: 0 success, 2 usage errors, 3 IO errors, 4 algorithm errors.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gb/cluster.hpp"
#include "gb/dataio.hpp"
#include "gb/error.hpp"
#include "gb/generation.hpp"
#include "gb/metrics.hpp"
#include "gb/serialize.hpp"

namespace {

using json = nlohmann::ordered_json;

struct GlobalFlags {
    std::uint64_t seed = 0;
    bool normalize = false;
    std::string format = "json";
};

struct LoadFlags {
    std::string path;
    bool no_header = false;
    std::string label_column;
    std::string delimiter = ",";
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void add_load_flags(CLI::App* cmd, LoadFlags& flags) {
    cmd->add_option("-i,--input", flags.path, "input dataset (CSV)")->required();
    cmd->add_flag("--no-header", flags.no_header, "treat the first CSV line as data");
    cmd->add_option("--label-column", flags.label_column, "label column: 0-based index or header name");
    cmd->add_option("--delimiter", flags.delimiter, "CSV delimiter (default ',')");
}

gb::Dataset load_dataset(const LoadFlags& flags, const GlobalFlags& global) {
    gb::CsvOptions options;
    options.has_header = !flags.no_header;
    options.label_column = flags.label_column;
    if (flags.delimiter.size() != 1) throw UsageError("--delimiter must be a single character");
    options.delimiter = flags.delimiter[0];
    gb::Dataset data = gb::load_csv(flags.path, options);
    data.validate();
    if (global.normalize) data = gb::minmax_normalize(data);
    return data;
}

double timed_seconds(const std::function<void()>& fn) {
    auto start = std::chrono::steady_clock::now();
    fn();
    auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

double total_quality(const gb::GBSet& gbset, const gb::Dataset& data, const gb::QualityParams& params) {
    double total = 0.0;
    for (const auto& ball : gbset.balls) total += gb::ball_quality(ball, data, params);
    return total;
}

// balls documents carry the preprocessing provenance; downstream commands
// must be fed the same dataset the generator saw
void check_balls_against(const gb::BallsDocument& doc, const gb::Dataset& data, const GlobalFlags& global) {
    if (doc.normalized != global.normalize)
        throw UsageError(doc.normalized ? "balls were generated with --normalize; pass it here too"
                                        : "balls were generated without --normalize");
    if (doc.n != data.n() || doc.m != data.m())
        throw UsageError("balls file was generated from a differently shaped dataset");
    if (doc.checksum != gb::dataset_checksum(data))
        throw UsageError("dataset checksum does not match the balls file");
}

gb::GBSet rebuild_gbset(const gb::BallsDocument& doc, const gb::Dataset& data) {
    gb::GBSet gbset;
    gbset.dataset_n = data.n();
    for (const auto& ball : doc.gbset.balls) gbset.balls.push_back(gb::make_ball(data, ball.members));
    auto report = gb::validate_partition(gbset);
    if (!report.ok) throw UsageError("balls file does not partition the dataset");
    return gbset;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        gb::write_text_file(out_path, text);
}

// range spec: a single number, or "start:step:stop" inclusive
std::vector<double> parse_range(const std::string& spec) {
    std::vector<double> values;
    std::size_t first = spec.find(':');
    if (first == std::string::npos) {
        values.push_back(std::stod(spec));
        return values;
    }
    std::size_t second = spec.find(':', first + 1);
    if (second == std::string::npos) throw UsageError("range must be start:step:stop");
    double start = std::stod(spec.substr(0, first));
    double step = std::stod(spec.substr(first + 1, second - first - 1));
    double stop = std::stod(spec.substr(second + 1));
    if (step <= 0.0) throw UsageError("range step must be positive");
    for (double v = start; v <= stop + 1e-12; v += step) values.push_back(v);
    return values;
}

gb::GBSet run_generator(const std::string& method, const gb::Dataset& data, const gb::QualityParams& params) {
    if (method == "pojg") return gb::generate_pojg(data, params);
    if (method == "cheng") return gb::generate_cheng(data);
    return gb::generate_xie(data);
}

void require_unit_interval(double value, const char* name) {
    if (!(value > 0.0) || !(value <= 1.0))
        throw UsageError(std::string("--") + name + " must be in (0, 1]");
}

// ---------------------------------------------------------------- generate

int cmd_generate(const GlobalFlags& global, const LoadFlags& load, const std::string& method, double gamma,
                 double delta, const std::string& out_path) {
    if (gamma < 0.0) throw UsageError("--gamma must be >= 0");
    require_unit_interval(delta, "delta");

    gb::Dataset data = load_dataset(load, global);
    gb::QualityParams params{gamma, delta};

    gb::GBSet gbset;
    double elapsed = timed_seconds([&] { gbset = run_generator(method, data, params); });

    gb::BallsDocument doc;
    doc.dataset_name = data.name;
    doc.n = data.n();
    doc.m = data.m();
    doc.checksum = gb::dataset_checksum(data);
    doc.normalized = global.normalize;
    doc.method = method;
    doc.gamma = gamma;
    doc.delta = delta;
    doc.seed = global.seed;
    doc.gbset = gbset;
    gb::write_text_file(out_path, gb::balls_to_json(doc));

    std::cout << "balls=" << gbset.balls.size()
              << " total_quality=" << gb::format_double(total_quality(gbset, data, params))
              << " elapsed_seconds=" << gb::format_double(elapsed) << "\n";
    return 0;
}

// ----------------------------------------------------------------- cluster

int cmd_cluster(const GlobalFlags& global, const LoadFlags& load, const std::string& balls_path,
                const std::string& algo, std::size_t k, double lambda, double sigma,
                const std::string& out_path) {
    if (k < 1) throw UsageError("--k must be >= 1");
    if (algo == "gbdpc") require_unit_interval(lambda, "lambda");
    if (algo == "gbsc" && !(sigma > 0.0)) throw UsageError("--sigma must be > 0");

    gb::Dataset data = load_dataset(load, global);
    gb::BallsDocument doc = gb::balls_from_json(gb::read_text_file(balls_path));
    check_balls_against(doc, data, global);
    gb::GBSet gbset = rebuild_gbset(doc, data);

    gb::ClusterAssignment result = algo == "gbdpc" ? gb::gbdpc(gbset, data, k, lambda)
                                                   : gb::gbsc(gbset, data, k, sigma, global.seed);

    gb::AssignmentDocument out;
    out.meta = result.meta;
    out.meta.seed = global.seed;
    out.gamma = doc.gamma;
    out.delta = doc.delta;
    out.normalized = global.normalize;
    out.dataset_checksum = doc.checksum;
    out.k = result.k;
    out.ball_labels = result.ball_labels;
    out.instance_labels = result.instance_labels;
    gb::write_text_file(out_path, gb::assignment_to_json(out));

    std::cout << "method=" << algo << " k=" << k << " balls=" << gbset.balls.size() << "\n";
    return 0;
}

// -------------------------------------------------------------------- eval

int cmd_eval(const GlobalFlags& global, const LoadFlags& load, const std::string& assignment_path,
             const std::string& out_path) {
    gb::Dataset data = load_dataset(load, global);
    if (!data.has_labels()) throw UsageError("eval needs ground-truth labels; pass --label-column");
    gb::AssignmentDocument doc = gb::assignment_from_json(gb::read_text_file(assignment_path));
    if (doc.instance_labels.size() != data.n())
        throw UsageError("assignment covers " + std::to_string(doc.instance_labels.size()) +
                         " instances, dataset has " + std::to_string(data.n()));

    double acc = gb::clustering_accuracy(doc.instance_labels, data.labels);
    double mutual = gb::nmi(doc.instance_labels, data.labels);
    auto table = gb::contingency(doc.instance_labels, data.labels);

    std::string text;
    if (global.format == "csv") {
        std::ostringstream csv;
        csv << "acc,nmi,n,k_pred,k_true\n"
            << gb::format_double(acc) << ',' << gb::format_double(mutual) << ',' << table.n << ','
            << table.k_pred << ',' << table.k_true << "\n";
        text = csv.str();
    } else {
        json j;
        j["acc"] = acc;
        j["nmi"] = mutual;
        j["n"] = table.n;
        j["k_pred"] = table.k_pred;
        j["k_true"] = table.k_true;
        text = j.dump(2) + "\n";
    }
    emit(text, out_path);
    return 0;
}

// ------------------------------------------------------------------- bench

int cmd_bench(const GlobalFlags& global, const std::vector<std::string>& inputs,
              const std::vector<std::string>& methods, int reps, const std::string& gamma_spec,
              const std::string& delta_spec, const LoadFlags& load_template, const std::string& out_path) {
    if (reps < 1) throw UsageError("--reps must be >= 1");
    std::vector<double> gammas = parse_range(gamma_spec);
    std::vector<double> deltas = parse_range(delta_spec);
    for (double g : gammas)
        if (g < 0.0) throw UsageError("--gamma must be >= 0");
    for (double d : deltas) require_unit_interval(d, "delta");
    for (const auto& method : methods)
        if (method != "pojg" && method != "cheng" && method != "xie")
            throw UsageError("unknown method '" + method + "'");

    struct Row {
        std::string dataset, method;
        double gamma, delta;
        std::size_t balls;
        double quality, seconds;
    };
    std::vector<Row> rows;

    for (const auto& path : inputs) {
        LoadFlags flags = load_template;
        flags.path = path;
        gb::Dataset data = load_dataset(flags, global);
        for (const auto& method : methods) {
            for (double gamma : gammas) {
                for (double delta : deltas) {
                    gb::QualityParams params{gamma, delta};
                    gb::GBSet gbset;
                    std::vector<double> times(static_cast<std::size_t>(reps));
                    for (auto& t : times)
                        t = timed_seconds([&] { gbset = run_generator(method, data, params); });
                    std::sort(times.begin(), times.end());
                    double med = times.size() % 2
                                     ? times[times.size() / 2]
                                     : 0.5 * (times[times.size() / 2 - 1] + times[times.size() / 2]);
                    rows.push_back({data.name, method, gamma, delta, gbset.balls.size(),
                                    total_quality(gbset, data, params), med});
                }
            }
        }
    }

    std::string text;
    if (global.format == "csv") {
        std::ostringstream csv;
        csv << "dataset,method,gamma,delta,balls,total_quality,median_seconds\n";
        for (const auto& row : rows)
            csv << row.dataset << ',' << row.method << ',' << gb::format_double(row.gamma) << ','
                << gb::format_double(row.delta) << ',' << row.balls << ',' << gb::format_double(row.quality)
                << ',' << gb::format_double(row.seconds) << "\n";
        text = csv.str();
    } else {
        json j = json::array();
        for (const auto& row : rows)
            j.push_back({{"dataset", row.dataset},
                         {"method", row.method},
                         {"gamma", row.gamma},
                         {"delta", row.delta},
                         {"balls", row.balls},
                         {"total_quality", row.quality},
                         {"median_seconds", row.seconds}});
        text = j.dump(2) + "\n";
    }
    emit(text, out_path);
    return 0;
}

// ------------------------------------------------------------------- synth

int cmd_synth(const GlobalFlags& global, const std::string& shape, std::size_t n, double noise,
              std::size_t classes, const std::string& out_path) {
    gb::Dataset data = gb::synth(gb::parse_shape(shape), n, noise, global.seed, classes);
    gb::save_csv(data, out_path);
    std::cout << "shape=" << shape << " n=" << n << " written=" << out_path << "\n";
    return 0;
}

// ---------------------------------------------------------------- plotdata

int cmd_plotdata(const GlobalFlags& global, const LoadFlags& load, const std::string& balls_path,
                 const std::string& assignment_path, const std::string& out_path) {
    gb::Dataset data = load_dataset(load, global);
    if (data.m() != 2) throw UsageError("plotdata needs a 2-D dataset, got m=" + std::to_string(data.m()));
    gb::BallsDocument doc = gb::balls_from_json(gb::read_text_file(balls_path));
    check_balls_against(doc, data, global);
    gb::GBSet gbset = rebuild_gbset(doc, data);

    std::vector<int> cluster_ids(data.n(), -1);
    if (!assignment_path.empty()) {
        gb::AssignmentDocument assignment = gb::assignment_from_json(gb::read_text_file(assignment_path));
        if (assignment.instance_labels.size() != data.n())
            throw UsageError("assignment does not cover the dataset");
        cluster_ids = assignment.instance_labels;
    }
    auto owner = gb::instance_to_ball(gbset);

    std::string text;
    if (global.format == "csv") {
        std::ostringstream csv;
        csv << "kind,id,x,y,avg_radius,member_count,cluster_id\n";
        for (std::size_t b = 0; b < gbset.balls.size(); ++b) {
            const auto& ball = gbset.balls[b];
            csv << "ball," << b << ',' << gb::format_double(ball.center[0]) << ','
                << gb::format_double(ball.center[1]) << ',' << gb::format_double(ball.avg_radius) << ','
                << ball.size() << ",\n";
        }
        for (std::size_t i = 0; i < data.n(); ++i)
            csv << "point," << owner[i] << ',' << gb::format_double(data.features(i, 0)) << ','
                << gb::format_double(data.features(i, 1)) << ",,," << cluster_ids[i] << "\n";
        text = csv.str();
    } else {
        json j;
        j["balls"] = json::array();
        for (const auto& ball : gbset.balls)
            j["balls"].push_back({{"center_x", ball.center[0]},
                                  {"center_y", ball.center[1]},
                                  {"avg_radius", ball.avg_radius},
                                  {"member_count", ball.size()}});
        j["points"] = json::array();
        for (std::size_t i = 0; i < data.n(); ++i)
            j["points"].push_back({{"x", data.features(i, 0)},
                                   {"y", data.features(i, 1)},
                                   {"ball_id", owner[i]},
                                   {"cluster_id", cluster_ids[i]}});
        text = j.dump(2) + "\n";
    }
    emit(text, out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"granular-ball clustering toolkit"};
    app.require_subcommand(1);

    GlobalFlags global;
    app.add_option("--seed", global.seed, "seed for every random decision")->capture_default_str();
    app.add_flag("--normalize", global.normalize, "min-max normalize features to [0,1] after loading");
    app.add_option("--format", global.format, "output format for eval/bench/plotdata")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    // fallthrough lets the global flags appear after the subcommand name
    auto* generate = app.add_subcommand("generate", "generate granular balls from a dataset");
    generate->fallthrough();
    LoadFlags gen_load;
    add_load_flags(generate, gen_load);
    std::string gen_method;
    double gen_gamma = 1.0, gen_delta = 0.3;
    std::string gen_out;
    generate->add_option("-m,--method", gen_method, "pojg | cheng | xie")
        ->required()
        ->check(CLI::IsMember({"pojg", "cheng", "xie"}));
    generate->add_option("--gamma", gen_gamma, "specificity weight (pojg)")->capture_default_str();
    generate->add_option("--delta", gen_delta, "size threshold scale in (0,1] (pojg)")->capture_default_str();
    generate->add_option("-o,--out", gen_out, "balls JSON output path")->required();

    auto* cluster = app.add_subcommand("cluster", "cluster a generated ball set");
    cluster->fallthrough();
    LoadFlags clu_load;
    add_load_flags(cluster, clu_load);
    std::string clu_balls, clu_algo, clu_out;
    std::size_t clu_k = 2;
    double clu_lambda = 0.1, clu_sigma = 1.0;
    cluster->add_option("-b,--balls", clu_balls, "balls JSON from `generate`")->required();
    cluster->add_option("-a,--algo", clu_algo, "gbdpc | gbsc")
        ->required()
        ->check(CLI::IsMember({"gbdpc", "gbsc"}));
    cluster->add_option("-k,--k", clu_k, "number of clusters")->required();
    cluster->add_option("--lambda", clu_lambda, "gbdpc truncation scale in (0,1]")->capture_default_str();
    cluster->add_option("--sigma", clu_sigma, "gbsc kernel width")->capture_default_str();
    cluster->add_option("-o,--out", clu_out, "assignment JSON output path")->required();

    auto* eval = app.add_subcommand("eval", "score an assignment against ground truth");
    eval->fallthrough();
    LoadFlags eval_load;
    add_load_flags(eval, eval_load);
    std::string eval_assignment, eval_out;
    eval->add_option("-s,--assignment", eval_assignment, "assignment JSON from `cluster`")->required();
    eval->add_option("-o,--out", eval_out, "write the report here instead of stdout");

    auto* bench = app.add_subcommand("bench", "compare generation methods across datasets");
    bench->fallthrough();
    LoadFlags bench_load;
    std::vector<std::string> bench_inputs, bench_methods{"pojg", "cheng", "xie"};
    int bench_reps = 1;
    std::string bench_gamma = "1", bench_delta = "0.3", bench_out;
    bench->add_option("-i,--input", bench_inputs, "dataset CSV (repeatable)")->required();
    bench->add_flag("--no-header", bench_load.no_header, "treat the first CSV line as data");
    bench->add_option("--label-column", bench_load.label_column, "label column to strip");
    bench->add_option("--delimiter", bench_load.delimiter, "CSV delimiter");
    bench->add_option("-m,--methods", bench_methods, "methods to run")->delimiter(',')->capture_default_str();
    bench->add_option("--reps", bench_reps, "repetitions; the median time is reported")->capture_default_str();
    bench->add_option("--gamma", bench_gamma, "gamma value or start:step:stop grid")->capture_default_str();
    bench->add_option("--delta", bench_delta, "delta value or start:step:stop grid")->capture_default_str();
    bench->add_option("-o,--out", bench_out, "write the table here instead of stdout");

    auto* synth_cmd = app.add_subcommand("synth", "write a synthetic 2-D dataset");
    synth_cmd->fallthrough();
    std::string synth_shape, synth_out;
    std::size_t synth_n = 300, synth_classes = 0;
    double synth_noise = 0.05;
    synth_cmd->add_option("--shape", synth_shape, "blobs | rings | moons | spirals")->required();
    synth_cmd->add_option("-n,--n", synth_n, "instance count")->capture_default_str();
    synth_cmd->add_option("--noise", synth_noise, "jitter scale")->capture_default_str();
    synth_cmd->add_option("--classes", synth_classes, "class count (0 = shape default)");
    synth_cmd->add_option("-o,--out", synth_out, "dataset CSV output path")->required();

    auto* plotdata = app.add_subcommand("plotdata", "export ball circles and labeled points");
    plotdata->fallthrough();
    LoadFlags plot_load;
    add_load_flags(plotdata, plot_load);
    std::string plot_balls, plot_assignment, plot_out;
    plotdata->add_option("-b,--balls", plot_balls, "balls JSON from `generate`")->required();
    plotdata->add_option("-s,--assignment", plot_assignment, "optional assignment JSON for cluster ids");
    plotdata->add_option("-o,--out", plot_out, "write records here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (generate->parsed())
            return cmd_generate(global, gen_load, gen_method, gen_gamma, gen_delta, gen_out);
        if (cluster->parsed())
            return cmd_cluster(global, clu_load, clu_balls, clu_algo, clu_k, clu_lambda, clu_sigma, clu_out);
        if (eval->parsed()) return cmd_eval(global, eval_load, eval_assignment, eval_out);
        if (bench->parsed())
            return cmd_bench(global, bench_inputs, bench_methods, bench_reps, bench_gamma, bench_delta,
                             bench_load, bench_out);
        if (synth_cmd->parsed())
            return cmd_synth(global, synth_shape, synth_n, synth_noise, synth_classes, synth_out);
        if (plotdata->parsed()) return cmd_plotdata(global, plot_load, plot_balls, plot_assignment, plot_out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gb::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (e.code() == gb::errc::unknown_shape || e.code() == gb::errc::invalid_params) return 2;
        return e.is_io() ? 3 : 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
