#include "cusumlab/record.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"

namespace cusumlab {

using nlohmann::json;

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::report: return "report";
    case Verdict::identically_zero: return "identically-zero";
    case Verdict::cap: return "cap";
  }
  return "report";
}

Verdict parse_verdict(const std::string& text) {
  for (Verdict v : {Verdict::pass, Verdict::fail, Verdict::report, Verdict::identically_zero, Verdict::cap}) {
    if (to_string(v) == text) return v;
  }
  throw std::invalid_argument("unknown verdict: " + text);
}

std::string format_value(const Rational& x) { return to_string(x); }

std::string format_value(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

json scenario_json(const ScenarioFields& s) {
  json out = json::object();
  auto put = [&](const char* name, const std::optional<int>& v) {
    if (v) out[name] = *v;
  };
  put("c", s.c);
  put("b", s.b);
  put("k", s.k);
  put("p", s.p);
  put("q", s.q);
  if (s.superscript) out["superscript"] = *s.superscript;
  if (s.h) out["h"] = *s.h;
  return out;
}

ScenarioFields scenario_from_json(const json& j) {
  ScenarioFields s;
  auto get = [&](const char* name, std::optional<int>& v) {
    if (j.contains(name)) v = j.at(name).get<int>();
  };
  get("c", s.c);
  get("b", s.b);
  get("k", s.k);
  get("p", s.p);
  get("q", s.q);
  if (j.contains("superscript")) s.superscript = j.at("superscript").get<std::vector<int>>();
  if (j.contains("h")) s.h = j.at("h").get<std::vector<int>>();
  return s;
}

}  // namespace

std::string to_json_line(const VerificationRecord& rec) {
  json j;
  j["schema_version"] = rec.schema_version;
  j["command"] = rec.command;
  j["scenario"] = scenario_json(rec.scenario);
  if (rec.w) {
    std::vector<std::string> ws;
    for (const Rational& x : *rec.w) ws.push_back(to_string(x));
    j["w"] = ws;
  }
  j["quantity"] = rec.quantity;
  j["value"] = rec.value;
  j["verdict"] = to_string(rec.verdict);
  j["seed"] = rec.seed;
  j["elapsed_ms"] = rec.elapsed_ms;
  if (!rec.detail.empty()) j["detail"] = rec.detail;
  return j.dump();
}

VerificationRecord from_json_line(const std::string& line) {
  const json j = json::parse(line);
  VerificationRecord rec;
  rec.schema_version = j.at("schema_version").get<std::string>();
  rec.command = j.at("command").get<std::string>();
  rec.scenario = scenario_from_json(j.at("scenario"));
  if (j.contains("w")) {
    std::vector<Rational> ws;
    for (const auto& s : j.at("w")) ws.push_back(parse_rational(s.get<std::string>()));
    rec.w = std::move(ws);
  }
  rec.quantity = j.at("quantity").get<std::string>();
  rec.value = j.at("value").get<std::string>();
  rec.verdict = parse_verdict(j.at("verdict").get<std::string>());
  rec.seed = j.at("seed").get<std::uint64_t>();
  rec.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
  if (j.contains("detail")) rec.detail = j.at("detail").get<std::map<std::string, std::string>>();
  return rec;
}

void sort_records(std::vector<VerificationRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const VerificationRecord& x, const VerificationRecord& y) {
    return std::tie(x.scenario, x.quantity, x.value) < std::tie(y.scenario, y.quantity, y.value);
  });
}

void append_records(const std::vector<VerificationRecord>& records, const std::filesystem::path& store) {
  std::ofstream out(store, std::ios::app | std::ios::binary);
  if (!out) throw std::runtime_error("cannot open result store " + store.string());
  for (const auto& rec : records) out << to_json_line(rec) << '\n';
  out.flush();
  if (!out) throw std::runtime_error("write failed on result store " + store.string());
}

void append_record(const VerificationRecord& rec, const std::filesystem::path& store) {
  append_records({rec}, store);
}

}  // namespace cusumlab
