#ifndef EASL_TRACE_HPP
#define EASL_TRACE_HPP

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "easl/affect.hpp"

namespace easl {

// One machine-readable record per cycle transition.
struct TraceRecord {
    long tick = 0;
    std::string agent;
    std::string cycle; // "rational" | "affective" | "sim"
    std::string step;  // step or rule name (SelEv, EvClass3, ...)
    nlohmann::json payload;
};

class TraceSink {
public:
    virtual ~TraceSink() = default;
    virtual void emit(const TraceRecord& record) = 0;
};

class NullSink : public TraceSink {
public:
    void emit(const TraceRecord&) override {}
};

class MemorySink : public TraceSink {
public:
    void emit(const TraceRecord& record) override { records.push_back(record); }
    std::vector<TraceRecord> records;
};

// JSON Lines output with floats pinned to 6 fractional digits.
class JsonLinesSink : public TraceSink {
public:
    explicit JsonLinesSink(std::ostream& out) : out_(out) {}
    void emit(const TraceRecord& record) override;

private:
    std::ostream& out_;
};

// {"tick":..,"agent":..,"cycle":..,"step":..,"payload":..} with object keys
// sorted and every float rendered as %.6f.
std::string serialize_trace_record(const TraceRecord& record);

// Payload helpers.
nlohmann::json to_json(const AffectVector& v);
nlohmann::json to_json(const Emotion& e);

} // namespace easl

#endif
