#pragma once

// JSON request/response operations behind the C API. Requests carry parsed
// documents (instances, scenes, ...) or raw text (DIMACS, PACE) inline.

#include <string_view>

#include "compat/model_io.hpp"

namespace compat {

enum class Outcome { Yes, No, Unknown };

struct ServiceResult {
  Outcome outcome = Outcome::Yes;
  Json payload;
};

// Operations: co.solve, co.verify, co.reduce, arr.solve, arr.verify,
// ramp.reduce, ramp.solve, ramp.verify, ramp.render, gen.random, version.
// Throws InputError for bad requests and InternalError when a result fails
// its own certificate check.
ServiceResult run_operation(std::string_view op, const Json& request);

inline constexpr const char* kLibraryVersion = "1.0.0";

// Format name -> schema version for every file format the tools read or write.
Json schema_versions();

}  // namespace compat
