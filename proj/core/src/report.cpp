#include "bvista/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bvista/error.hpp"

namespace bvista {
namespace {

using nlohmann::json;

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json correlation_json(const CorrelationResult& c) {
  return {{"srcc", optional_number(c.srcc)}, {"plcc", optional_number(c.plcc)}};
}

json score_json(const VideoScore& s) {
  return {{"video_id", s.video_id},   {"q_a", s.q_a},
          {"q_s", s.q_s},             {"q_t", s.q_t},
          {"q_unified", s.q_unified}, {"raw_niqe", s.raw_niqe},
          {"raw_tpqi", s.raw_tpqi},   {"da_values", s.da_values},
          {"flags", s.flags}};
}

json stats_json(const StatsMap& stats) {
  json out = json::object();
  for (const auto& [tag, s] : stats) {
    out[tag] = {{"mean", s.mean}, {"std", s.std}, {"sample_count", s.sample_count}};
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
  if (!out) throw FormatError("failed writing " + path.string());
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) out += (out.empty() ? "" : ";") + f;
  return out;
}

void write_score_columns(std::ostream& out, const VideoScore& s) {
  out << s.q_a << ',' << s.q_s << ',' << s.q_t << ',' << s.q_unified << ',' << s.raw_niqe << ','
      << s.raw_tpqi;
  for (double da : s.da_values) out << ',' << da;
  out << ',' << csv_field(join_flags(s.flags)) << '\n';
}

void write_score_header(std::ostream& out, std::size_t pairs) {
  out << "q_a,q_s,q_t,q_unified,raw_niqe,raw_tpqi";
  for (std::size_t p = 0; p < pairs; ++p) out << ",da" << p;
  out << ",flags\n";
}

std::string svg_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Type checks for validate_report_json.
bool is_corr(const json& v) { return v.is_null() || (v.is_number() && std::abs(v.get<double>()) <= 1.0); }

}  // namespace

std::string report_to_json(const BenchmarkReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    json row = score_json(r.score);
    row["video_path"] = r.video_path;
    row["mos"] = r.mos;
    rows.push_back(std::move(row));
  }
  json skipped = json::array();
  for (const auto& s : report.skipped) {
    skipped.push_back({{"video_id", s.video_id}, {"reason", s.reason}});
  }
  json ablation = json::array();
  for (const auto& a : report.ablation) {
    json row = correlation_json(a.correlation);
    row["components"] = a.label();
    ablation.push_back(std::move(row));
  }
  json strategies = json::array();
  for (const auto& s : report.strategies) {
    json row = correlation_json(s.correlation);
    row["strategy"] = strategy_name(s.strategy);
    strategies.push_back(std::move(row));
  }
  const json doc = {{"dataset", report.dataset},
                    {"manifest_entries", report.manifest_entries},
                    {"scored_entries", report.rows.size()},
                    {"srcc", optional_number(report.overall.srcc)},
                    {"plcc", optional_number(report.overall.plcc)},
                    {"rows", rows},
                    {"skipped", skipped},
                    {"ablation", ablation},
                    {"strategies", strategies},
                    {"stats", stats_json(report.stats)},
                    {"config", report.config},
                    {"timing",
                     {{"scoring_seconds", report.timing.scoring_seconds},
                      {"total_seconds", report.timing.total_seconds}}}};
  return doc.dump(2) + "\n";
}

void write_report_json(const std::filesystem::path& path, const BenchmarkReport& report) {
  write_text(path, report_to_json(report));
}

std::vector<std::string> validate_report_json(std::string_view json_text) {
  std::vector<std::string> problems;
  const json doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return {"document is not a JSON object"};

  auto need = [&](const json& obj, const std::string& key, auto&& check,
                  const std::string& what, const std::string& where) {
    if (!obj.contains(key)) {
      problems.push_back(where + key + " is missing");
    } else if (!check(obj.at(key))) {
      problems.push_back(where + key + " is not " + what);
    }
  };
  auto is_string = [](const json& v) { return v.is_string(); };
  auto is_count = [](const json& v) { return v.is_number_unsigned(); };
  auto is_number = [](const json& v) { return v.is_number(); };
  auto is_array = [](const json& v) { return v.is_array(); };
  auto is_object = [](const json& v) { return v.is_object(); };

  need(doc, "dataset", is_string, "a string", "");
  need(doc, "manifest_entries", is_count, "a count", "");
  need(doc, "scored_entries", is_count, "a count", "");
  need(doc, "srcc", is_corr, "a correlation", "");
  need(doc, "plcc", is_corr, "a correlation", "");
  need(doc, "rows", is_array, "an array", "");
  need(doc, "skipped", is_array, "an array", "");
  need(doc, "ablation", is_array, "an array", "");
  need(doc, "strategies", is_array, "an array", "");
  need(doc, "stats", is_object, "an object", "");
  need(doc, "config", is_object, "an object", "");
  need(doc, "timing", is_object, "an object", "");
  if (!problems.empty()) return problems;

  for (std::size_t i = 0; i < doc["rows"].size(); ++i) {
    const json& row = doc["rows"][i];
    const std::string where = "rows[" + std::to_string(i) + "].";
    if (!row.is_object()) {
      problems.push_back("rows[" + std::to_string(i) + "] is not an object");
      continue;
    }
    need(row, "video_path", is_string, "a string", where);
    need(row, "video_id", is_string, "a string", where);
    for (const char* k : {"mos", "q_a", "q_s", "q_t", "q_unified", "raw_niqe", "raw_tpqi"}) {
      need(row, k, is_number, "a number", where);
    }
    need(row, "da_values", is_array, "an array", where);
    need(row, "flags", is_array, "an array", where);
  }
  if (doc["scored_entries"].is_number() && doc["scored_entries"] != doc["rows"].size()) {
    problems.push_back("scored_entries differs from the number of rows");
  }
  if (doc["manifest_entries"].is_number() &&
      doc["manifest_entries"].get<std::size_t>() != doc["rows"].size() + doc["skipped"].size()) {
    problems.push_back("rows + skipped do not account for every manifest entry");
  }
  if (doc["ablation"].size() != 7) problems.push_back("ablation grid must have 7 rows");
  for (std::size_t i = 0; i < doc["ablation"].size(); ++i) {
    const json& row = doc["ablation"][i];
    const std::string where = "ablation[" + std::to_string(i) + "].";
    need(row, "components", is_string, "a string", where);
    need(row, "srcc", is_corr, "a correlation", where);
    need(row, "plcc", is_corr, "a correlation", where);
  }
  for (std::size_t i = 0; i < doc["strategies"].size(); ++i) {
    const json& row = doc["strategies"][i];
    const std::string where = "strategies[" + std::to_string(i) + "].";
    need(row, "strategy", is_string, "a string", where);
    need(row, "srcc", is_corr, "a correlation", where);
    need(row, "plcc", is_corr, "a correlation", where);
  }
  need(doc["timing"], "total_seconds", is_number, "a number", "timing.");
  return problems;
}

void write_report_csv(const std::filesystem::path& path, const BenchmarkReport& report) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << std::setprecision(10) << "video_path,video_id,mos,";
  write_score_header(out, report.rows.empty() ? 0 : report.rows.front().score.da_values.size());
  for (const auto& r : report.rows) {
    out << csv_field(r.video_path) << ',' << csv_field(r.score.video_id) << ',' << r.mos << ',';
    write_score_columns(out, r.score);
  }
  if (!out) throw FormatError("failed writing " + path.string());
}

void write_scores_csv(std::ostream& out, std::span<const VideoScore> scores) {
  out << std::setprecision(10) << "video_id,";
  write_score_header(out, scores.empty() ? 0 : scores.front().da_values.size());
  for (const auto& s : scores) {
    out << csv_field(s.video_id) << ',';
    write_score_columns(out, s);
  }
}

std::string scores_to_json(std::span<const VideoScore> scores, const StatsMap& stats) {
  json rows = json::array();
  for (const auto& s : scores) rows.push_back(score_json(s));
  return json{{"scores", rows}, {"stats", stats_json(stats)}}.dump(2) + "\n";
}

std::string scatter_svg(std::span<const double> x, std::span<const double> y,
                        std::string_view x_label, std::string_view y_label,
                        std::string_view title) {
  if (x.size() != y.size()) throw ArgumentError("scatter plot axes differ in length");
  constexpr double W = 480, H = 360, L = 60, R = 20, T = 40, B = 50;
  auto range = [](std::span<const double> v) {
    if (v.empty()) return std::pair{0.0, 1.0};
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    double a = *lo, b = *hi;
    if (a == b) {
      a -= 0.5;
      b += 0.5;
    }
    return std::pair{a, b};
  };
  const auto [x0, x1] = range(x);
  const auto [y0, y1] = range(y);
  auto px = [&](double v) { return L + (v - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double v) { return H - B - (v - y0) / (y1 - y0) * (H - T - B); };

  std::ostringstream s;
  s << std::setprecision(6);
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
    << svg_escape(title) << "</text>\n"
    << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\""
    << H - T - B << "\" fill=\"none\" stroke=\"black\"/>\n";
  s << "<text x=\"" << L << "\" y=\"" << H - B + 16 << "\" font-size=\"10\">" << x0
    << "</text>\n<text x=\"" << W - R << "\" y=\"" << H - B + 16
    << "\" font-size=\"10\" text-anchor=\"end\">" << x1 << "</text>\n"
    << "<text x=\"" << L - 4 << "\" y=\"" << H - B << "\" font-size=\"10\" text-anchor=\"end\">"
    << y0 << "</text>\n<text x=\"" << L - 4 << "\" y=\"" << T + 10
    << "\" font-size=\"10\" text-anchor=\"end\">" << y1 << "</text>\n";
  s << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12
    << "\" text-anchor=\"middle\" font-size=\"12\">" << svg_escape(x_label) << "</text>\n"
    << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" font-size=\"12\""
    << " transform=\"rotate(-90 16 " << (T + H - B) / 2 << ")\">" << svg_escape(y_label)
    << "</text>\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    s << "<circle cx=\"" << px(x[i]) << "\" cy=\"" << py(y[i])
      << "\" r=\"3\" fill=\"steelblue\" fill-opacity=\"0.7\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::vector<std::filesystem::path> write_scatter_plots(const std::filesystem::path& dir,
                                                       const BenchmarkReport& report) {
  std::filesystem::create_directories(dir);
  std::vector<double> mos;
  for (const auto& r : report.rows) mos.push_back(r.mos);
  struct Metric {
    const char* name;
    double VideoScore::*field;
  };
  const Metric metrics[] = {{"q_unified", &VideoScore::q_unified},
                            {"q_a", &VideoScore::q_a},
                            {"q_s", &VideoScore::q_s},
                            {"q_t", &VideoScore::q_t}};
  std::vector<std::filesystem::path> written;
  for (const auto& m : metrics) {
    std::vector<double> x;
    for (const auto& r : report.rows) x.push_back(r.score.*(m.field));
    const auto path = dir / (std::string(m.name) + "_vs_mos.svg");
    write_text(path, scatter_svg(x, mos, m.name, "MOS", report.dataset + ": " + m.name));
    written.push_back(path);
  }
  return written;
}

}  // namespace bvista
