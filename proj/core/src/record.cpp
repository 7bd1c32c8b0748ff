#include "occupancy/record.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace occupancy {

void OutputRecord::apply_validity(const ValidityReport& v) {
  if (v.has_subset) {
    ratio_a = v.ratio_a;
    ratio_b = v.ratio_b;
    ratio_c1 = v.ratio_c1;
    ratio_c2 = v.ratio_c2;
    alpha = v.alpha;
    class_a = condition_status_name(v.class_a);
    class_b = condition_status_name(v.class_b);
    class_c1 = condition_status_name(v.class_c1);
    class_c2 = condition_status_name(v.class_c2);
  }
  if (v.has_bins) {
    r_sqrt_ratio = v.r_sqrt_ratio;
    m_n2_ratio = v.m_n2_ratio;
    nr_m_ratio = v.nr_m_ratio;
    class_r_sqrt = condition_status_name(v.class_r_sqrt);
    class_m_n2 = condition_status_name(v.class_m_n2);
    class_nr_m = condition_status_name(v.class_nr_m);
  }
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

struct FieldVisitor {
  // Visits every field in the fixed serialization order.
  template <class Fn>
  static void visit(const OutputRecord& r, Fn&& emit) {
    emit("model", r.model);
    emit("N", r.N);
    emit("S", r.S);
    emit("K", r.K);
    emit("m", r.m);
    emit("n", r.n);
    emit("R", r.R);
    emit("a", r.a);
    emit("method", r.method);
    emit("value", r.value);
    emit("lower", r.lower);
    emit("upper", r.upper);
    emit("exact", r.exact);
    emit("c", r.c);
    emit("target_prob", r.target_prob);
    emit("trials", r.trials);
    emit("seed", r.seed);
    emit("ratio_a", r.ratio_a);
    emit("ratio_b", r.ratio_b);
    emit("ratio_c1", r.ratio_c1);
    emit("ratio_c2", r.ratio_c2);
    emit("alpha", r.alpha);
    emit("class_a", r.class_a);
    emit("class_b", r.class_b);
    emit("class_c1", r.class_c1);
    emit("class_c2", r.class_c2);
    emit("r_sqrt_ratio", r.r_sqrt_ratio);
    emit("m_n2_ratio", r.m_n2_ratio);
    emit("nr_m_ratio", r.nr_m_ratio);
    emit("class_r_sqrt", r.class_r_sqrt);
    emit("class_m_n2", r.class_m_n2);
    emit("class_nr_m", r.class_nr_m);
    emit("runtime_ms", r.runtime_ms);
  }
};

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

class JsonEmitter {
 public:
  void operator()(const char* key, const std::string& v) {
    field(key);
    os_ << '"' << json_escape(v) << '"';
  }
  void operator()(const char* key, std::int64_t v) {
    field(key);
    os_ << v;
  }
  void operator()(const char* key, const std::optional<std::uint64_t>& v) {
    if (!v) return;
    field(key);
    os_ << *v;
  }
  void operator()(const char* key, const std::optional<double>& v) {
    if (!v) return;
    field(key);
    if (std::isfinite(*v)) {
      os_ << format_double(*v);
    } else {
      os_ << '"' << format_double(*v) << '"';
    }
  }
  void operator()(const char* key, const std::optional<std::string>& v) {
    if (!v) return;
    (*this)(key, *v);
  }

  std::string str() const { return "{" + os_.str() + "}"; }

 private:
  void field(const char* key) {
    if (any_) os_ << ',';
    any_ = true;
    os_ << '"' << key << "\":";
  }

  std::ostringstream os_;
  bool any_ = false;
};

class CsvEmitter {
 public:
  void operator()(const char*, const std::string& v) { cell(quote(v)); }
  void operator()(const char*, std::int64_t v) { cell(std::to_string(v)); }
  void operator()(const char*, const std::optional<std::uint64_t>& v) {
    cell(v ? std::to_string(*v) : "");
  }
  void operator()(const char*, const std::optional<double>& v) {
    cell(v ? format_double(*v) : "");
  }
  void operator()(const char*, const std::optional<std::string>& v) {
    cell(v ? quote(*v) : "");
  }

  static std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
      out += ch;
      if (ch == '"') out += '"';
    }
    out += '"';
    return out;
  }

  std::string str() const { return os_.str(); }

 private:
  void cell(const std::string& s) {
    if (any_) os_ << ',';
    any_ = true;
    os_ << s;
  }

  std::ostringstream os_;
  bool any_ = false;
};

}  // namespace

std::string to_json(const OutputRecord& r) {
  JsonEmitter e;
  FieldVisitor::visit(r, [&](const char* k, const auto& v) { e(k, v); });
  return e.str();
}

std::string csv_header() {
  std::string out;
  FieldVisitor::visit(OutputRecord{}, [&](const char* k, const auto&) {
    if (!out.empty()) out += ',';
    out += k;
  });
  return out;
}

std::string to_csv_row(const OutputRecord& r) {
  CsvEmitter e;
  FieldVisitor::visit(r, [&](const char* k, const auto& v) { e(k, v); });
  return e.str();
}

std::string to_table(const std::vector<OutputRecord>& records) {
  std::ostringstream os;
  for (const OutputRecord& r : records) {
    os << r.model;
    if (r.N) os << " N=" << *r.N;
    if (r.S) os << " S=" << *r.S;
    if (r.K) os << " K=" << *r.K;
    if (r.m) os << " m=" << *r.m;
    if (r.n) os << " n=" << *r.n;
    if (r.R) os << " R=" << *r.R;
    if (r.a) os << " a=" << format_double(*r.a);
    os << "  " << r.method << ":";
    if (r.value) os << " value=" << format_double(*r.value);
    if (r.lower && r.upper) {
      os << " [" << format_double(*r.lower) << ", " << format_double(*r.upper) << "]";
    }
    if (r.exact) os << " exact=" << *r.exact;
    if (r.c) os << " c=" << format_double(*r.c);
    if (r.trials) os << " trials=" << *r.trials;
    if (r.seed) os << " seed=" << *r.seed;
    if (r.ratio_a) {
      os << " a:" << format_double(*r.ratio_a) << "(" << *r.class_a << ")"
         << " b:" << format_double(*r.ratio_b) << "(" << *r.class_b << ")"
         << " c1:" << format_double(*r.ratio_c1) << "(" << *r.class_c1 << ")"
         << " c2:" << format_double(*r.ratio_c2) << "(" << *r.class_c2 << ")"
         << " alpha:" << format_double(*r.alpha);
    }
    if (r.r_sqrt_ratio) {
      os << " r/sqrt:" << format_double(*r.r_sqrt_ratio) << "(" << *r.class_r_sqrt << ")"
         << " m/n2:" << format_double(*r.m_n2_ratio) << "(" << *r.class_m_n2 << ")"
         << " nr/m:" << format_double(*r.nr_m_ratio) << "(" << *r.class_nr_m << ")";
    }
    os << " (" << r.runtime_ms << " ms)\n";
  }
  return os.str();
}

namespace {

double double_from(const nlohmann::json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
  }
  return v.get<double>();
}

}  // namespace

OutputRecord record_from_json(const std::string& line) {
  const nlohmann::json j = nlohmann::json::parse(line);
  OutputRecord r;
  const auto u64 = [&](const char* k, std::optional<std::uint64_t>& dst) {
    if (j.contains(k)) dst = j.at(k).get<std::uint64_t>();
  };
  const auto dbl = [&](const char* k, std::optional<double>& dst) {
    if (j.contains(k)) dst = double_from(j.at(k));
  };
  const auto str = [&](const char* k, std::optional<std::string>& dst) {
    if (j.contains(k)) dst = j.at(k).get<std::string>();
  };
  r.model = j.value("model", "");
  u64("N", r.N);
  u64("S", r.S);
  u64("K", r.K);
  u64("m", r.m);
  u64("n", r.n);
  u64("R", r.R);
  dbl("a", r.a);
  r.method = j.value("method", "");
  dbl("value", r.value);
  dbl("lower", r.lower);
  dbl("upper", r.upper);
  str("exact", r.exact);
  dbl("c", r.c);
  dbl("target_prob", r.target_prob);
  u64("trials", r.trials);
  u64("seed", r.seed);
  dbl("ratio_a", r.ratio_a);
  dbl("ratio_b", r.ratio_b);
  dbl("ratio_c1", r.ratio_c1);
  dbl("ratio_c2", r.ratio_c2);
  dbl("alpha", r.alpha);
  str("class_a", r.class_a);
  str("class_b", r.class_b);
  str("class_c1", r.class_c1);
  str("class_c2", r.class_c2);
  dbl("r_sqrt_ratio", r.r_sqrt_ratio);
  dbl("m_n2_ratio", r.m_n2_ratio);
  dbl("nr_m_ratio", r.nr_m_ratio);
  str("class_r_sqrt", r.class_r_sqrt);
  str("class_m_n2", r.class_m_n2);
  str("class_nr_m", r.class_nr_m);
  r.runtime_ms = j.value("runtime_ms", std::int64_t{0});
  return r;
}

}  // namespace occupancy
