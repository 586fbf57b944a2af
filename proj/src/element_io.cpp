#include "podles/element_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace podles {

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string element_to_json(const AlgebraElement& f) {
  std::ostringstream out;
  out << "{\"groupoid\": \"" << to_string(f.tag()) << "\", \"terms\": [";
  bool first = true;
  for (const auto& [a, c] : f.terms()) {
    if (!first) out << ", ";
    first = false;
    out << "{\"im\": " << format_double(c.imag()) << ", \"m\": ";
    if (a.m.is_inf())
      out << "\"inf\"";
    else
      out << a.m.value();
    out << ", \"n\": " << a.n << ", \"re\": " << format_double(c.real()) << "}";
  }
  out << "]}";
  return out.str();
}

AlgebraElement element_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const std::string tag_name = j.at("groupoid").get<std::string>();
  GroupoidTag tag;
  if (tag_name == "O1")
    tag = GroupoidTag::O1;
  else if (tag_name == "GS")
    tag = GroupoidTag::GS;
  else
    throw std::invalid_argument("element_from_json: unknown groupoid tag " + tag_name);

  AlgebraElement f(tag);
  for (const auto& rec : j.at("terms")) {
    Unit m = Unit::at(0);
    if (rec.at("m").is_string()) {
      if (rec.at("m").get<std::string>() != "inf")
        throw std::invalid_argument("element_from_json: bad source index");
      m = Unit::inf();
    } else {
      m = Unit::at(rec.at("m").get<std::int64_t>());
    }
    const auto n = rec.at("n").get<std::int64_t>();
    const double re = rec.at("re").get<double>();
    const double im = rec.at("im").get<double>();
    f.add_term(Arrow{m, n}, Coeff(re, im));
  }
  return f;
}

}  // namespace podles
