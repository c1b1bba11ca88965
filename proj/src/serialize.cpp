#include "gb/serialize.hpp"

#include <fstream>
#include <sstream>

#include "gb/error.hpp"
#include "json.hpp"

namespace gb {

namespace {
using json = nlohmann::ordered_json;

json ball_to_json(const GranularBall& ball) {
    json j;
    j["members"] = ball.members;
    j["center"] = ball.center;
    j["avg_radius"] = ball.avg_radius;
    j["max_radius"] = ball.max_radius;
    return j;
}

GranularBall ball_from_json(const json& j) {
    GranularBall ball;
    ball.members = j.at("members").get<std::vector<std::size_t>>();
    ball.center = j.at("center").get<std::vector<double>>();
    ball.avg_radius = j.at("avg_radius").get<double>();
    ball.max_radius = j.at("max_radius").get<double>();
    return ball;
}

json parse(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error(errc::parse_error, std::string("malformed ") + what + " document");
    return j;
}

} // namespace

std::string balls_to_json(const BallsDocument& doc) {
    json j;
    j["dataset"] = {{"name", doc.dataset_name},
                    {"n", doc.n},
                    {"m", doc.m},
                    {"checksum", doc.checksum},
                    {"normalized", doc.normalized}};
    j["method"] = doc.method;
    j["params"] = {{"gamma", doc.gamma}, {"delta", doc.delta}, {"seed", doc.seed}};
    j["balls"] = json::array();
    for (const auto& ball : doc.gbset.balls) j["balls"].push_back(ball_to_json(ball));
    return j.dump(2) + "\n";
}

BallsDocument balls_from_json(const std::string& text) {
    json j = parse(text, "balls");
    BallsDocument doc;
    try {
        const auto& ds = j.at("dataset");
        doc.dataset_name = ds.at("name").get<std::string>();
        doc.n = ds.at("n").get<std::size_t>();
        doc.m = ds.at("m").get<std::size_t>();
        doc.checksum = ds.at("checksum").get<std::string>();
        doc.normalized = ds.value("normalized", false);
        doc.method = j.at("method").get<std::string>();
        doc.gamma = j.at("params").value("gamma", 0.0);
        doc.delta = j.at("params").value("delta", 0.0);
        doc.seed = j.at("params").value("seed", std::uint64_t{0});
        doc.gbset.dataset_n = doc.n;
        for (const auto& item : j.at("balls")) doc.gbset.balls.push_back(ball_from_json(item));
    } catch (const json::exception& e) {
        throw Error(errc::parse_error, std::string("balls document: ") + e.what());
    }
    return doc;
}

std::string assignment_to_json(const AssignmentDocument& doc) {
    json meta;
    meta["method"] = doc.meta.method;
    meta["k"] = doc.meta.k;
    if (doc.meta.lambda) meta["lambda"] = *doc.meta.lambda;
    if (doc.meta.sigma) meta["sigma"] = *doc.meta.sigma;
    meta["seed"] = doc.meta.seed;
    if (doc.gamma) meta["gamma"] = *doc.gamma;
    if (doc.delta) meta["delta"] = *doc.delta;
    meta["normalized"] = doc.normalized;
    meta["dataset_checksum"] = doc.dataset_checksum;
    meta["nmi_normalization"] = doc.nmi_normalization;

    json j;
    j["run_meta"] = meta;
    j["k"] = doc.k;
    j["ball_labels"] = doc.ball_labels;
    j["instance_labels"] = doc.instance_labels;
    return j.dump(2) + "\n";
}

AssignmentDocument assignment_from_json(const std::string& text) {
    json j = parse(text, "assignment");
    AssignmentDocument doc;
    try {
        const auto& meta = j.at("run_meta");
        doc.meta.method = meta.at("method").get<std::string>();
        doc.meta.k = meta.at("k").get<std::size_t>();
        if (meta.contains("lambda")) doc.meta.lambda = meta["lambda"].get<double>();
        if (meta.contains("sigma")) doc.meta.sigma = meta["sigma"].get<double>();
        doc.meta.seed = meta.value("seed", std::uint64_t{0});
        if (meta.contains("gamma")) doc.gamma = meta["gamma"].get<double>();
        if (meta.contains("delta")) doc.delta = meta["delta"].get<double>();
        doc.normalized = meta.value("normalized", false);
        doc.dataset_checksum = meta.value("dataset_checksum", std::string{});
        doc.nmi_normalization = meta.value("nmi_normalization", std::string{"sqrt"});
        doc.k = j.at("k").get<std::size_t>();
        doc.ball_labels = j.at("ball_labels").get<std::vector<int>>();
        doc.instance_labels = j.at("instance_labels").get<std::vector<int>>();
    } catch (const json::exception& e) {
        throw Error(errc::parse_error, std::string("assignment document: ") + e.what());
    }
    return doc;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::io_error, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw Error(errc::io_error, "read failure on " + path);
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(errc::io_error, "cannot write " + path);
    out << text;
    if (!out) throw Error(errc::io_error, "write failure on " + path);
}

} // namespace gb
