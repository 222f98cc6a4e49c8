#include "easl/trace.hpp"

#include <cmath>
#include <cstdio>

namespace easl {

namespace {

void dump_number(std::string& out, const nlohmann::json& j) {
    if (j.is_number_float()) {
        double v = j.get<double>();
        if (!std::isfinite(v)) {
            out += "null";
            return;
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.6f", v);
        out += buf;
        return;
    }
    out += j.dump();
}

void dump(std::string& out, const nlohmann::json& j) {
    switch (j.type()) {
    case nlohmann::json::value_t::object: {
        out += '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ',';
            first = false;
            out += nlohmann::json(it.key()).dump();
            out += ':';
            dump(out, it.value());
        }
        out += '}';
        return;
    }
    case nlohmann::json::value_t::array: {
        out += '[';
        for (size_t i = 0; i < j.size(); ++i) {
            if (i) out += ',';
            dump(out, j[i]);
        }
        out += ']';
        return;
    }
    case nlohmann::json::value_t::number_float:
        dump_number(out, j);
        return;
    default:
        out += j.dump();
        return;
    }
}

} // namespace

std::string serialize_trace_record(const TraceRecord& record) {
    std::string out = "{\"tick\":" + std::to_string(record.tick);
    out += ",\"agent\":" + nlohmann::json(record.agent).dump();
    out += ",\"cycle\":" + nlohmann::json(record.cycle).dump();
    out += ",\"step\":" + nlohmann::json(record.step).dump();
    out += ",\"payload\":";
    dump(out, record.payload);
    out += '}';
    return out;
}

void JsonLinesSink::emit(const TraceRecord& record) {
    out_ << serialize_trace_record(record) << '\n';
}

nlohmann::json to_json(const AffectVector& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (size_t i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

nlohmann::json to_json(const Emotion& e) {
    nlohmann::json j;
    j["label"] = e.label.valid() ? e.label.str() : "";
    j["intensity"] = e.intensity();
    j["angle"] = e.angle();
    j["vector"] = to_json(e.vector);
    return j;
}

} // namespace easl
