#include "compat/compat.h"

#include <exception>
#include <new>
#include <string>

#include "compat/model_io.hpp"
#include "compat/service.hpp"

struct compat_instance {
  compat::Json doc;
  std::size_t vertex_count;
  int k;
};

struct compat_result {
  std::string json;
};

namespace {

thread_local std::string last_error;

compat_status status_of(compat::Outcome o) {
  switch (o) {
    case compat::Outcome::Yes:
      return COMPAT_YES;
    case compat::Outcome::No:
      return COMPAT_NO;
    case compat::Outcome::Unknown:
      return COMPAT_UNKNOWN;
  }
  return COMPAT_INTERNAL_ERROR;
}

// Runs body, mapping exceptions onto status codes and the thread's error text.
template <typename Body>
compat_status guarded(Body&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const compat::InputError& e) {
    last_error = e.what();
    return COMPAT_INPUT_ERROR;
  } catch (const compat::Json::exception& e) {
    last_error = std::string("malformed JSON: ") + e.what();
    return COMPAT_INPUT_ERROR;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return COMPAT_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return COMPAT_INTERNAL_ERROR;
  }
}

compat_status respond(const compat::ServiceResult& r, compat_result** out) {
  if (out) *out = new compat_result{r.payload.dump()};
  return status_of(r.outcome);
}

}  // namespace

extern "C" {

const char* compat_version(void) { return compat::kLibraryVersion; }

const char* compat_schema_versions(void) {
  static const std::string text =
      compat::Json{{"version", compat::kLibraryVersion}, {"schemas", compat::schema_versions()}}.dump();
  return text.c_str();
}

const char* compat_last_error(void) { return last_error.c_str(); }

compat_status compat_instance_parse(const char* json, compat_instance** out) {
  return guarded([&] {
    if (!json || !out) throw compat::InputError("null argument");
    compat::Json doc = compat::parse_json_text(json);
    const compat::Instance inst = compat::instance_from_json(doc);
    *out = new compat_instance{std::move(doc), inst.vertex_count(), inst.k()};
    return COMPAT_YES;
  });
}

void compat_instance_free(compat_instance* inst) { delete inst; }

size_t compat_instance_vertex_count(const compat_instance* inst) { return inst ? inst->vertex_count : 0; }

int compat_instance_k(const compat_instance* inst) { return inst ? inst->k : 0; }

compat_status compat_solve(const compat_instance* inst, const char* method, int threads, unsigned long long max_nodes,
                           compat_result** out) {
  return guarded([&] {
    if (!inst || !method) throw compat::InputError("null argument");
    const std::string m = method;
    if (m == "modular") throw compat::InputError("modular solving needs a decomposition; use compat_call");
    compat::Json req{{"instance", inst->doc}, {"method", m}, {"threads", threads}, {"max_nodes", max_nodes}};
    return respond(compat::run_operation("co.solve", req), out);
  });
}

compat_status compat_verify(const compat_instance* inst, const char* ordering_json, int partial, compat_result** out) {
  return guarded([&] {
    if (!inst || !ordering_json) throw compat::InputError("null argument");
    compat::Json req{{"instance", inst->doc},
                     {"ordering", compat::parse_json_text(ordering_json)},
                     {"partial", partial != 0}};
    return respond(compat::run_operation("co.verify", req), out);
  });
}

compat_status compat_call(const char* op, const char* request_json, compat_result** out) {
  return guarded([&] {
    if (!op) throw compat::InputError("null operation");
    const compat::Json req = request_json ? compat::parse_json_text(request_json) : compat::Json::object();
    return respond(compat::run_operation(op, req), out);
  });
}

const char* compat_result_json(const compat_result* result) { return result ? result->json.c_str() : ""; }

void compat_result_free(compat_result* result) { delete result; }

}  // extern "C"
