#include "akn/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace akn {
namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& origin, const std::string& what) {
    throw ParseError(origin + ": " + what);
}

double number_field(const json& obj, const char* key, const std::string& origin,
                    const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_number()) {
        parse_fail(origin, where + ": missing numeric field \"" + key + "\"");
    }
    return obj[key].get<double>();
}

// 17 significant digits: the shortest count that round-trips every double.
std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

} // namespace

Packing load_packing_stream(std::istream& in, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        parse_fail(origin, e.what());
    }
    if (!doc.is_object()) {
        parse_fail(origin, "top level is not an object");
    }
    if (!doc.contains("format_version") || !doc["format_version"].is_number_integer() ||
        doc["format_version"].get<int>() != 1) {
        parse_fail(origin, "format_version must be the integer 1");
    }
    if (!doc.contains("chart") || !doc["chart"].is_string()) {
        parse_fail(origin, "missing string field \"chart\"");
    }
    const std::string chart = doc["chart"].get<std::string>();
    if (chart != "s3" && chart != "r3") {
        throw UnsupportedChartError(origin + ": unknown chart \"" + chart +
                                    "\" (expected \"s3\" or \"r3\")");
    }
    if (!doc.contains("balls") || !doc["balls"].is_array()) {
        parse_fail(origin, "missing array field \"balls\"");
    }

    Packing packing;
    packing.chart = (chart == "s3") ? Chart::S3 : Chart::R3;
    const std::size_t dim = (packing.chart == Chart::S3) ? 4 : 3;
    std::size_t index = 0;
    for (const json& entry : doc["balls"]) {
        std::ostringstream where;
        where << "balls[" << index << "]";
        if (!entry.is_object()) {
            parse_fail(origin, where.str() + ": not an object");
        }
        if (!entry.contains("center") || !entry["center"].is_array() ||
            entry["center"].size() != dim) {
            std::ostringstream msg;
            msg << where.str() << ": center must be an array of " << dim << " numbers";
            parse_fail(origin, msg.str());
        }
        for (const json& coordinate : entry["center"]) {
            if (!coordinate.is_number()) {
                parse_fail(origin, where.str() + ": center has a non-numeric entry");
            }
        }
        if (packing.chart == Chart::S3) {
            SphericalBall ball;
            for (int i = 0; i < 4; ++i) {
                ball.center[i] = entry["center"][i].get<double>();
            }
            ball.radius = number_field(entry, "radius_rad", origin, where.str());
            if (!(ball.radius > 0.0) || !(ball.radius < std::numbers::pi)) {
                parse_fail(origin, where.str() + ": radius_rad must lie in (0, pi)");
            }
            try {
                require_unit(ball.center);
            } catch (const InvalidInputError& e) {
                parse_fail(origin, where.str() + ": " + e.what());
            }
            packing.s3_balls.push_back(ball);
        } else {
            EuclideanBall ball;
            for (int i = 0; i < 3; ++i) {
                ball.center[i] = entry["center"][i].get<double>();
            }
            ball.radius = number_field(entry, "radius", origin, where.str());
            if (!(ball.radius > 0.0) || !std::isfinite(ball.radius)) {
                parse_fail(origin, where.str() + ": radius must be positive and finite");
            }
            packing.r3_balls.push_back(ball);
        }
        ++index;
    }

    if (doc.contains("labels")) {
        if (!doc["labels"].is_array()) {
            parse_fail(origin, "labels must be an array of strings");
        }
        for (const json& label : doc["labels"]) {
            if (!label.is_string()) {
                parse_fail(origin, "labels must be an array of strings");
            }
            packing.labels.push_back(label.get<std::string>());
        }
        if (packing.labels.size() != packing.size()) {
            parse_fail(origin, "label count does not match ball count");
        }
    }
    return packing;
}

Packing load_packing(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path + ": cannot open file");
    }
    return load_packing_stream(in, path);
}

void save_packing_stream(const Packing& packing, std::ostream& out) {
    // Hand-rolled writer: fixed field order and %.17g numbers keep the
    // output byte-identical across runs and bit-exact under reload.
    const bool s3 = packing.chart == Chart::S3;
    out << "{\n  \"format_version\": 1,\n  \"chart\": \"" << (s3 ? "s3" : "r3")
        << "\",\n  \"balls\": [\n";
    const std::size_t n = packing.size();
    for (std::size_t i = 0; i < n; ++i) {
        out << "    {\"center\": [";
        if (s3) {
            const SphericalBall& ball = packing.s3_balls[i];
            for (int k = 0; k < 4; ++k) {
                out << (k ? ", " : "") << format_double(ball.center[k]);
            }
            out << "], \"radius_rad\": " << format_double(ball.radius) << "}";
        } else {
            const EuclideanBall& ball = packing.r3_balls[i];
            for (int k = 0; k < 3; ++k) {
                out << (k ? ", " : "") << format_double(ball.center[k]);
            }
            out << "], \"radius\": " << format_double(ball.radius) << "}";
        }
        out << (i + 1 < n ? ",\n" : "\n");
    }
    out << "  ]";
    if (!packing.labels.empty()) {
        out << ",\n  \"labels\": [";
        for (std::size_t i = 0; i < packing.labels.size(); ++i) {
            json quoted = packing.labels[i]; // reuse JSON string escaping
            out << (i ? ", " : "") << quoted.dump();
        }
        out << "]";
    }
    out << "\n}\n";
}

void save_packing(const Packing& packing, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw Error(path + ": cannot open file for writing");
    }
    save_packing_stream(packing, out);
    out.flush();
    if (!out) {
        throw Error(path + ": write failed");
    }
}

std::vector<ConvergenceRow> report_convergence(long long max_n) {
    if (max_n < 0) {
        throw InvalidInputError("max_n must be non-negative");
    }
    std::vector<ConvergenceRow> rows;
    rows.reserve(static_cast<std::size_t>(max_n) + 1);
    for (long long n = 0; n <= max_n; ++n) {
        ConvergenceRow row;
        row.n = n;
        row.ball_count = 118 + 106 * n;
        row.tangency_count = 696 + 666 * n;
        row.k = 2.0 * static_cast<double>(row.tangency_count) /
                static_cast<double>(row.ball_count);
        // 666/53 - k reduces to this positive, strictly decreasing form.
        row.gap = 4812.0 / (53.0 * static_cast<double>(row.ball_count));
        rows.push_back(row);
    }
    return rows;
}

void write_convergence_csv(const std::vector<ConvergenceRow>& rows, std::ostream& out) {
    out << "n,balls,tangencies,k,gap\n";
    char buffer[64];
    for (const ConvergenceRow& row : rows) {
        out << row.n << ',' << row.ball_count << ',' << row.tangency_count << ',';
        std::snprintf(buffer, sizeof(buffer), "%.7f", row.k);
        out << buffer << ',';
        std::snprintf(buffer, sizeof(buffer), "%.10f", row.gap);
        out << buffer << '\n';
    }
}

} // namespace akn
