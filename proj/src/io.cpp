#include "hetdp/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hetdp {

namespace {

std::string trim(const std::string& s) {
  auto b = s.begin();
  auto e = s.end();
  while (b != e && std::isspace(static_cast<unsigned char>(*b))) ++b;
  while (e != b && std::isspace(static_cast<unsigned char>(*(e - 1)))) --e;
  return std::string(b, e);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool parse_value(const std::string& token, double& out) {
  const std::string t = lower(trim(token));
  if (t == "inf" || t == "+inf" || t == "infinity" || t == "+infinity") {
    out = kInfinity;
    return true;
  }
  const char* begin = t.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') return false;
  out = v;
  return true;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> parse_json_array(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(1, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_array()) throw ParseError(1, "expected a JSON array");
  std::vector<double> values;
  values.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& item = j[i];
    if (item.is_number()) {
      values.push_back(item.get<double>());
    } else if (item.is_string()) {
      double v = 0.0;
      if (!parse_value(item.get<std::string>(), v)) {
        throw ParseError(1, "array entry " + std::to_string(i) +
                                " is not a number: \"" +
                                item.get<std::string>() + "\"");
      }
      values.push_back(v);
    } else {
      throw ParseError(1,
                       "array entry " + std::to_string(i) + " is not a number");
    }
  }
  return values;
}

std::vector<double> parse_csv_lines(const std::string& text) {
  std::vector<double> values;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header_allowed = true;  // the first non-blank line may be a header
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    double v = 0.0;
    if (parse_value(t, v)) {
      values.push_back(v);
      header_allowed = false;
      continue;
    }
    if (header_allowed) {
      header_allowed = false;
      continue;
    }
    throw ParseError(line_no, "not a number: \"" + t + "\"");
  }
  return values;
}

}  // namespace

std::vector<double> read_values(const std::string& path) {
  const std::string text = slurp(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    return parse_json_array(text);
  }
  return parse_csv_lines(text);
}

PrivacyProfile read_profile(const std::string& path) {
  return validate_profile(read_values(path));
}

Dataset read_dataset(const std::string& path) {
  return validate_dataset(read_values(path));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string digest_file(const std::string& path) {
  const std::string text = slurp(path);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace hetdp
