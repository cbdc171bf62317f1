#include "mmph/diagram.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace mmph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

PersistenceDiagram normalize(const PersistenceDiagram& pd, double divisor) {
    if (!(divisor > 0.0) || std::isinf(divisor)) {
        throw ValueOutOfRange("normalization divisor must be a positive finite number");
    }
    PersistenceDiagram out;
    out.scale = pd.scale * divisor;
    out.intervals.reserve(pd.intervals.size());
    for (const Interval& iv : pd.intervals) {
        if (iv.birth < 0.0 || iv.birth > divisor ||
            (!iv.essential() && iv.death > divisor)) {
            throw ValueOutOfRange("interval exceeds normalization divisor " +
                                  format_number(divisor));
        }
        const double death = iv.essential() ? 1.0 : iv.death / divisor;
        out.intervals.push_back({iv.dim, iv.birth / divisor, death});
    }
    // Folding infinity onto 1.0 can change the relative order of deaths.
    out.canonicalize();
    return out;
}

DeathHistogram death_histogram(const PersistenceDiagram& pd, int dim,
                               int bin_count, double lo, double hi) {
    if (bin_count < 1) {
        throw ValueOutOfRange("histogram needs at least one bin");
    }
    if (!(lo < hi)) {
        throw ValueOutOfRange("histogram range must satisfy lo < hi");
    }
    DeathHistogram hist;
    hist.lo = lo;
    hist.hi = hi;
    hist.counts.assign(static_cast<std::size_t>(bin_count), 0);
    const double width = (hi - lo) / bin_count;
    for (const Interval& iv : pd.intervals) {
        if (iv.dim != dim) continue;
        if (iv.essential()) {
            ++hist.inf_count;
            continue;
        }
        if (iv.death < lo || iv.death > hi) {
            throw ValueOutOfRange("death value " + format_number(iv.death) +
                                  " outside histogram range [" + format_number(lo) +
                                  ", " + format_number(hi) + "]");
        }
        int bin = static_cast<int>((iv.death - lo) / width);
        if (bin >= bin_count) bin = bin_count - 1;  // death == hi closes the last bin
        ++hist.counts[static_cast<std::size_t>(bin)];
    }
    return hist;
}

std::string serialize_pd(const PersistenceDiagram& pd) {
    std::string out = "{\n  \"scale\": ";
    out += format_number(pd.scale);
    out += ",\n  \"intervals\": [";
    for (std::size_t i = 0; i < pd.intervals.size(); ++i) {
        const Interval& iv = pd.intervals[i];
        out += i == 0 ? "\n" : ",\n";
        out += "    {\"dim\": ";
        out += std::to_string(iv.dim);
        out += ", \"birth\": ";
        out += format_number(iv.birth);
        out += ", \"death\": ";
        out += iv.essential() ? "\"inf\"" : format_number(iv.death);
        out += "}";
    }
    out += pd.intervals.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

PersistenceDiagram parse_pd(const std::string& bytes) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(std::string("diagram is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("scale") || !doc.contains("intervals")) {
        throw MalformedInput("diagram JSON needs top-level 'scale' and 'intervals'");
    }
    if (!doc["scale"].is_number()) {
        throw MalformedInput("'scale' must be a number");
    }
    PersistenceDiagram pd;
    pd.scale = doc["scale"].get<double>();
    if (!(pd.scale > 0.0)) {
        throw ValueOutOfRange("'scale' must be positive");
    }
    if (!doc["intervals"].is_array()) {
        throw MalformedInput("'intervals' must be an array");
    }
    for (const auto& item : doc["intervals"]) {
        if (!item.is_object() || !item.contains("dim") || !item.contains("birth") ||
            !item.contains("death")) {
            throw MalformedInput("interval needs 'dim', 'birth' and 'death'");
        }
        if (!item["dim"].is_number_integer()) {
            throw MalformedInput("'dim' must be an integer");
        }
        const int dim = item["dim"].get<int>();
        if (dim != 0 && dim != 1) {
            throw ValueOutOfRange("'dim' must be 0 or 1, got " + std::to_string(dim));
        }
        if (!item["birth"].is_number()) {
            throw MalformedInput("'birth' must be a number");
        }
        const double birth = item["birth"].get<double>();
        double death = kInf;
        if (item["death"].is_string()) {
            if (item["death"].get<std::string>() != "inf") {
                throw MalformedInput("'death' string must be \"inf\"");
            }
        } else if (item["death"].is_number()) {
            death = item["death"].get<double>();
        } else {
            throw MalformedInput("'death' must be a number or \"inf\"");
        }
        if (birth < 0.0 || !(birth < death)) {
            throw ValueOutOfRange("interval needs 0 <= birth < death");
        }
        pd.intervals.push_back({dim, birth, death});
    }
    pd.canonicalize();
    return pd;
}

}  // namespace mmph
