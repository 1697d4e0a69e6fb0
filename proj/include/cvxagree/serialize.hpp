#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "cvxagree/sim.hpp"

namespace cvxagree {

using Json = nlohmann::ordered_json;

// Trace JSON Lines: a "scenario" record (with the instance in its text
// format), one "round" record per (round, processor) of an async run or
// "sync_round" / "sync_decision" records of a sync run, and a final
// "summary" record. Keys are emitted in a fixed order.

Json scenario_to_json(const Scenario& s);
/// Strict: unknown or missing keys throw InputError.
Scenario scenario_from_json(const Json& j);

Json blocking_to_json(const BlockingInstance& b, std::size_t universe);
BlockingInstance blocking_from_json(const Json& j, std::size_t universe);

Json summary_to_json(const Summary& s);

std::string trace_to_jsonl(const Trace& t);
void write_trace(std::ostream& out, const Trace& t);
/// Throws InputError on malformed lines or records.
Trace trace_from_jsonl(const std::string& text);

/// Throws InputError naming `where` if `j` is not an object or has a key
/// outside `allowed`.
void require_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where);

}  // namespace cvxagree
