#include "ckstk/report_json.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ckstk/errors.hpp"
#include "ckstk/version.hpp"

namespace ckstk {

namespace {

void write_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void write_double(std::string& out, double d) {
  if (std::isnan(d)) {
    out += "null";
    return;
  }
  if (std::isinf(d)) {
    out += d > 0 ? "1e999" : "-1e999";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", d);
  out += buf;
}

void indent_to(std::string& out, int level) {
  out.append(static_cast<std::size_t>(level) * 2, ' ');
}

}  // namespace

void JsonValue::write(std::string& out, int indent) const {
  if (std::holds_alternative<std::nullptr_t>(v_)) {
    out += "null";
  } else if (std::holds_alternative<bool>(v_)) {
    out += std::get<bool>(v_) ? "true" : "false";
  } else if (std::holds_alternative<double>(v_)) {
    write_double(out, std::get<double>(v_));
  } else if (std::holds_alternative<long long>(v_)) {
    out += std::to_string(std::get<long long>(v_));
  } else if (std::holds_alternative<std::string>(v_)) {
    write_escaped(out, std::get<std::string>(v_));
  } else if (std::holds_alternative<Object>(v_)) {
    const auto& obj = std::get<Object>(v_);
    if (obj.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [k, val] : obj) {  // std::map: keys already sorted
      if (!first) out += ",\n";
      first = false;
      indent_to(out, indent + 1);
      write_escaped(out, k);
      out += ": ";
      val.write(out, indent + 1);
    }
    out += "\n";
    indent_to(out, indent);
    out += "}";
  } else {
    const auto& arr = std::get<Array>(v_);
    if (arr.empty()) {
      out += "[]";
      return;
    }
    out += "[\n";
    bool first = true;
    for (const auto& val : arr) {
      if (!first) out += ",\n";
      first = false;
      indent_to(out, indent + 1);
      val.write(out, indent + 1);
    }
    out += "\n";
    indent_to(out, indent);
    out += "]";
  }
}

std::string JsonValue::dump() const {
  std::string out;
  write(out);
  out += "\n";
  return out;
}

namespace {

JsonValue verdict_to_json(const std::string& name, const Verdict& v) {
  JsonValue::Object o;
  o["name"] = name;
  o["status"] = status_name(v.status);
  o["margin"] = v.margin;
  if (v.constant)
    o["constant"] = *v.constant;
  else
    o["constant"] = nullptr;
  if (v.witness)
    o["witness"] = JsonValue::Array{JsonValue(v.witness->first),
                                    JsonValue(v.witness->second)};
  else
    o["witness"] = nullptr;
  if (!v.note.empty()) o["note"] = v.note;
  return JsonValue(std::move(o));
}

JsonValue evidence_to_json(const ClassEvidence& ev) {
  JsonValue::Object o;
  o["class"] = class_tag_name(ev.cls);
  o["verdict"] = status_name(ev.verdict);
  o["margin"] = ev.margin;
  if (ev.witness)
    o["witness"] = JsonValue::Array{JsonValue((*ev.witness)[0]),
                                    JsonValue((*ev.witness)[1]),
                                    JsonValue((*ev.witness)[2])};
  else
    o["witness"] = nullptr;
  if (!ev.note.empty()) o["note"] = ev.note;
  return JsonValue(std::move(o));
}

}  // namespace

JsonValue certificate_to_json(const EquivalenceCertificate& cert) {
  JsonValue::Object o;
  o["holds"] = cert.holds;
  o["c1"] = cert.c1;
  o["a1"] = cert.a1;
  o["c2"] = cert.c2;
  o["a2"] = cert.a2;
  o["r_min"] = cert.r_min;
  o["r_max"] = cert.r_max;
  o["grid_size"] = cert.grid_size;
  o["worst_margin"] = cert.worst_margin;
  if (!cert.note.empty()) o["note"] = cert.note;
  return JsonValue(std::move(o));
}

JsonValue report_to_json(const ConditionReport& report) {
  JsonValue::Object o;
  o["subject"] = report.subject;
  JsonValue::Object params;
  for (const auto& [k, v] : report.params) params[k] = v;
  o["params"] = std::move(params);
  o["N"] = report.n_max;
  JsonValue::Array conds;
  for (const auto& [name, verdict] : report.entries)
    conds.push_back(verdict_to_json(name, verdict));
  o["conditions"] = std::move(conds);
  JsonValue::Array evs;
  for (const auto& ev : report.u_evidence) evs.push_back(evidence_to_json(ev));
  o["uEvidence"] = std::move(evs);
  o["internallyConsistent"] = report.internally_consistent;
  JsonValue::Array viols;
  for (const auto& s : report.lattice_violations) viols.push_back(s);
  o["latticeViolations"] = std::move(viols);
  JsonValue::Array notes;
  for (const auto& s : report.notes) notes.push_back(s);
  o["notes"] = std::move(notes);
  o["certificates"] = JsonValue::Array{};
  o["toolVersion"] = kToolVersion;
  return JsonValue(std::move(o));
}

JsonValue example_report_to_json(const ExampleReport& report) {
  JsonValue::Object o;
  o["subject"] = report.subject;
  JsonValue::Array arr;
  for (const auto& a : report.assertions) {
    JsonValue::Object e;
    e["name"] = a.name;
    e["status"] = status_name(a.status);
    e["residual"] = a.residual;
    if (!a.note.empty()) e["note"] = a.note;
    arr.push_back(std::move(e));
  }
  o["assertions"] = std::move(arr);
  JsonValue::Array certs;
  for (const auto& p : report.certificates) {
    JsonValue::Object e;
    e["lhs"] = p.lhs;
    e["rhs"] = p.rhs;
    e["certificate"] = certificate_to_json(p.cert);
    certs.push_back(std::move(e));
  }
  o["certificates"] = std::move(certs);
  o["allPassed"] = report.all_passed();
  o["toolVersion"] = kToolVersion;
  return JsonValue(std::move(o));
}

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp =
      target.parent_path().empty()
          ? fs::path(target.string() + ".tmp")
          : target.parent_path() / (target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open output file: " + tmp.string());
    out << content;
  }
  fs::rename(tmp, target);
}

}  // namespace ckstk
