#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "slidefuse/experiments.hpp"

namespace slidefuse {
namespace {

std::string fixed(double value, int decimals) {
  if (std::isnan(value)) return "n/a";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string compact(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", value);
  return buf;
}

std::string pad(std::string text, std::size_t width) {
  if (text.size() < width) text.append(width - text.size(), ' ');
  return text;
}

constexpr std::size_t kLabelWidth = 10;
constexpr std::size_t kColumnWidth = 11;

void write_settings(std::ostream& out, const ExperimentSettings& s) {
  out << "# shuffles=" << s.shuffle_count << " train_fraction=" << compact(s.training_fraction)
      << " w=" << s.fusion.halfwidth << " segments=" << s.fusion.probfuse_segments
      << " seed=" << s.seed << '\n';
}

std::string vs_best_cell(const Comparison& c) {
  std::string cell = fixed(c.vs_best_percent, 2);
  if (cell != "n/a") cell += '%';
  if (c.tested && c.test.level != Significance::none) {
    cell += ' ';
    cell += significance_marker(c.test.level);
  }
  return cell;
}

void write_text_row(std::ostream& out, const std::string& label, const ScoreTable& scores,
                    std::size_t m, const Comparison& c) {
  std::string line = pad(label, kLabelWidth);
  for (std::size_t a = 0; a < kAlgorithms.size(); ++a) {
    std::string cell = fixed(scores[a][m], 4);
    // Brackets stand in for the bold "best other" marker.
    if (kAlgorithms[a] == c.best_other) cell = "[" + cell + "]";
    line += pad(cell, kColumnWidth);
  }
  line += vs_best_cell(c);
  out << line << '\n';
}

}  // namespace

void write_report_text(std::ostream& out, const ExperimentReport& report) {
  write_settings(out, report.settings);
  for (std::size_t m = 0; m < kMeasures.size(); ++m) {
    out << '\n' << measure_name(kMeasures[m]) << '\n';
    std::string header = pad("run", kLabelWidth);
    for (Algorithm a : kAlgorithms) header += pad(std::string(algorithm_name(a)), kColumnWidth);
    header += "vs. Best";
    out << header << '\n' << std::string(header.size() + 4, '-') << '\n';
    for (const auto& g : report.groups) write_text_row(out, g.name, g.scores, m, g.comparisons[m]);
    out << std::string(header.size() + 4, '-') << '\n';
    write_text_row(out, "average", report.average, m, report.average_comparisons[m]);
  }
  bool degenerate = false;
  for (const auto& g : report.groups) {
    for (const auto& c : g.comparisons) degenerate = degenerate || (c.tested && c.test.degenerate);
  }
  out << "\n[x] best of the other techniques; * p < 0.05, ** p < 0.01 (paired two-tailed t-test)\n";
  if (degenerate) out << "note: some differences had zero variance (degenerate t-test)\n";
}

void write_report_tsv(std::ostream& out, const ExperimentReport& report) {
  out << "metric\trun";
  for (Algorithm a : kAlgorithms) out << '\t' << algorithm_name(a);
  out << "\tbest_other\tvs_best_pct\tt\tdf\tsignificance\tnote\n";
  auto row = [&](std::size_t m, const std::string& label, const ScoreTable& scores,
                 const Comparison& c) {
    out << measure_name(kMeasures[m]) << '\t' << label;
    for (std::size_t a = 0; a < kAlgorithms.size(); ++a) out << '\t' << fixed(scores[a][m], 6);
    out << '\t' << algorithm_name(c.best_other) << '\t' << fixed(c.vs_best_percent, 4);
    if (c.tested) {
      out << '\t' << fixed(c.test.t, 6) << '\t' << c.test.df << '\t'
          << significance_marker(c.test.level) << '\t' << (c.test.degenerate ? "degenerate" : "");
    } else {
      out << "\t\t\t\t";
    }
    out << '\n';
  };
  for (std::size_t m = 0; m < kMeasures.size(); ++m) {
    for (const auto& g : report.groups) row(m, g.name, g.scores, g.comparisons[m]);
    row(m, "average", report.average, report.average_comparisons[m]);
  }
}

void write_sweep_text(std::ostream& out, const SweepTable& table) {
  out << "Coefficient of Variation for " << measure_name(table.measure)
      << " scores using training set sizes of";
  for (std::size_t i = 0; i < table.fractions.size(); ++i) {
    out << (i == 0 ? " " : ", ") << compact(table.fractions[i] * 100.0) << '%';
  }
  out << '\n';
  std::string header = pad("run", kLabelWidth);
  for (Algorithm a : kAlgorithms) header += pad(std::string(algorithm_name(a)), kColumnWidth);
  const std::size_t rule = header.size();
  while (header.back() == ' ') header.pop_back();
  out << header << '\n' << std::string(rule, '-') << '\n';
  for (const auto& row : table.rows) {
    std::string line = pad(row.name, kLabelWidth);
    for (std::size_t a = 0; a < kAlgorithms.size(); ++a) line += pad(fixed(row.cv[a], 4), kColumnWidth);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
}

void write_sweep_tsv(std::ostream& out, const SweepTable& table) {
  out << "run\talgorithm\tcv";
  for (double f : table.fractions) out << '\t' << measure_name(table.measure) << '@' << compact(f);
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t a = 0; a < kAlgorithms.size(); ++a) {
      out << row.name << '\t' << algorithm_name(kAlgorithms[a]) << '\t' << fixed(row.cv[a], 6);
      for (double v : row.values[a]) out << '\t' << fixed(v, 6);
      out << '\n';
    }
  }
}

}  // namespace slidefuse
