#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "ckstk/conditions.hpp"
#include "ckstk/equivalence.hpp"

namespace ckstk {

// Minimal JSON value with deterministic emission: object keys are sorted,
// floats are printed with 15 significant digits, so identical inputs yield
// byte-identical output.
class JsonValue {
public:
  using Object = std::map<std::string, JsonValue>;
  using Array = std::vector<JsonValue>;

  JsonValue() : v_(nullptr) {}
  JsonValue(std::nullptr_t) : v_(nullptr) {}
  JsonValue(bool b) : v_(b) {}
  JsonValue(double d) : v_(d) {}
  JsonValue(long long i) : v_(i) {}
  JsonValue(int i) : v_(static_cast<long long>(i)) {}
  JsonValue(const char* s) : v_(std::string(s)) {}
  JsonValue(std::string s) : v_(std::move(s)) {}
  JsonValue(Object o) : v_(std::move(o)) {}
  JsonValue(Array a) : v_(std::move(a)) {}

  void write(std::string& out, int indent = 0) const;
  std::string dump() const;

private:
  std::variant<std::nullptr_t, bool, double, long long, std::string, Object,
               Array>
      v_;
};

JsonValue report_to_json(const ConditionReport& report);
JsonValue certificate_to_json(const EquivalenceCertificate& cert);
JsonValue example_report_to_json(const ExampleReport& report);

// temp file + rename so readers never observe a partial report
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace ckstk
