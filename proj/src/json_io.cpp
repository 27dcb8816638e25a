#include "chebband/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace chebband {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void JsonWriter::comma() {
    if (!first_.empty()) {
        if (!first_.back()) out_ += ",";
        first_.back() = false;
    }
}

JsonWriter& JsonWriter::begin_object() {
    comma();
    out_ += "{";
    stack_.push_back('{');
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += "}";
    stack_.pop_back();
    first_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array(const std::string& k) {
    if (!k.empty()) key(k);
    comma();
    out_ += "[";
    stack_.push_back('[');
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += "]";
    stack_.pop_back();
    first_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
    comma();
    out_ += "\"" + k + "\":";
    first_.back() = true;  // suppress the comma before the value
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    comma();
    out_ += format_double(v);
    return *this;
}

JsonWriter& JsonWriter::value(int v) {
    comma();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    comma();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
    comma();
    out_ += "\"" + v + "\"";
    return *this;
}

namespace {

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

}  // namespace

IntervalSystem load_system(const std::string& path) {
    auto j = load_json(path);
    if (!j.contains("endpoints") || !j["endpoints"].is_array())
        throw std::runtime_error(path + ": expected {\"endpoints\": [...]}");
    std::vector<double> pts;
    for (const auto& v : j["endpoints"]) pts.push_back(v.get<double>());
    return IntervalSystem(pts);
}

Weight load_weight(const std::string& path, const IntervalSystem& sys) {
    auto j = load_json(path);
    std::string type = j.value("type", "");
    if (type == "unit") return Weight::unit();
    if (type == "poly") {
        double sign = j.value("sign", 1.0);
        bool reciprocal = j.value("reciprocal", false);
        std::vector<PolyRoot> roots;
        for (const auto& r : j.at("roots")) {
            PolyRoot pr;
            pr.w = cplx(r.value("re", 0.0), r.value("im", 0.0));
            pr.mult = r.value("mult", 1);
            roots.push_back(pr);
        }
        Weight w = Weight::polynomial(sign, std::move(roots), reciprocal);
        w.check_positive(sys);
        return w;
    }
    if (type == "sampled") {
        std::vector<double> grid, values;
        for (const auto& v : j.at("grid")) grid.push_back(v.get<double>());
        for (const auto& v : j.at("values")) values.push_back(v.get<double>());
        Weight w = Weight::sampled(sys, std::move(grid), std::move(values));
        w.check_positive(sys);
        return w;
    }
    throw std::runtime_error(path + ": weight type must be unit | poly | sampled");
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace chebband
