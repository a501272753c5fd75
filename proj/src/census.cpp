#include "census.hpp"

#include <algorithm>
#include <sstream>

#include "ipad.hpp"
#include "json.hpp"

namespace pcg {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Census ingest_census(const std::string& csv_text, int p) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty census file");
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
  std::vector<std::string> header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "ipad")
    throw ValidationError("census header must start with 'ipad'");
  Census census;
  for (size_t i = 1; i < header.size(); ++i) census.windows.push_back(header[i]);
  bool saw_other = false, saw_total = false;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw ValidationError("census row has the wrong number of columns: " + line);
    CensusRecord rec;
    rec.ipad = cells[0];
    for (size_t i = 1; i < cells.size(); ++i) {
      long long v = 0;
      try {
        v = std::stoll(cells[i]);
      } catch (const std::exception&) {
        throw ValidationError("bad count '" + cells[i] + "'");
      }
      if (v < 0) throw ValidationError("negative count");
      rec.counts.push_back(v);
    }
    for (size_t i = 1; i < rec.counts.size(); ++i)
      if (rec.counts[i] < rec.counts[i - 1])
        throw ValidationError("window counts must be non-decreasing: " + rec.ipad);
    if (rec.ipad == "OTHER") {
      census.other = std::move(rec);
      saw_other = true;
    } else if (rec.ipad == "TOTAL") {
      census.total = std::move(rec);
      saw_total = true;
    } else {
      parse_ipad(rec.ipad, p);  // validates the string
      census.rows.push_back(std::move(rec));
    }
  }
  if (!saw_other || !saw_total)
    throw ValidationError("census must contain OTHER and TOTAL rows");
  for (size_t w = 0; w < census.windows.size(); ++w) {
    long long sum = census.other.counts[w];
    for (const CensusRecord& r : census.rows) sum += r.counts[w];
    if (sum != census.total.counts[w])
      throw ValidationError("TOTAL row does not match the column sums");
  }
  return census;
}

ComparisonReport compare_census(const Census& census, const IpadTableResult& predictions) {
  ComparisonReport rep;
  rep.windows = census.windows;
  size_t widest = census.windows.size() - 1;
  auto observed_str = [&](long long count, long long total) {
    Rat v(Int(static_cast<long>(count)), Int(static_cast<long>(total)));
    v.canonicalize();
    return decimal4(v);
  };
  Rat tracked(0);
  for (const CensusRecord& r : census.rows) {
    ComparisonRow row;
    row.ipad = r.ipad;
    for (size_t w = 0; w < census.windows.size(); ++w)
      row.observed.push_back(observed_str(r.counts[w], census.total.counts[w]));
    const IpadEntry* entry = nullptr;
    for (const IpadEntry& e : predictions.entries)
      if (e.ipad == r.ipad) entry = &e;
    if (!entry) throw ValidationError("no prediction for IPAD " + r.ipad);
    row.predicted_exact = entry->measure;
    row.predicted_is_exact = entry->exact;
    row.predicted = decimal4(entry->measure);
    tracked += entry->measure;
    Rat obs(Int(static_cast<long>(r.counts[widest])),
            Int(static_cast<long>(census.total.counts[widest])));
    obs.canonicalize();
    Rat gap = obs - entry->measure;
    if (gap < 0) gap = -gap;
    row.gap_widest = decimal4(gap);
    rep.rows.push_back(std::move(row));
  }
  {
    ComparisonRow row;
    row.ipad = "OTHER";
    for (size_t w = 0; w < census.windows.size(); ++w)
      row.observed.push_back(observed_str(census.other.counts[w], census.total.counts[w]));
    row.predicted_exact = 1 - tracked;
    row.predicted_is_exact = true;
    for (const ComparisonRow& r : rep.rows)
      if (!r.predicted_is_exact) row.predicted_is_exact = false;
    row.predicted = decimal4(row.predicted_exact);
    Rat obs(Int(static_cast<long>(census.other.counts[widest])),
            Int(static_cast<long>(census.total.counts[widest])));
    obs.canonicalize();
    Rat gap = obs - row.predicted_exact;
    if (gap < 0) gap = -gap;
    row.gap_widest = decimal4(gap);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

std::string comparison_to_json(const ComparisonReport& r) {
  nlohmann::json out;
  out["windows"] = r.windows;
  nlohmann::json rows = nlohmann::json::array();
  for (const ComparisonRow& row : r.rows) {
    nlohmann::json j;
    j["ipad"] = row.ipad;
    j["observed"] = row.observed;
    j["predicted"] = row.predicted;
    j["predicted_num"] = row.predicted_exact.get_num().get_str();
    j["predicted_den"] = row.predicted_exact.get_den().get_str();
    j["predicted_exact_status"] = row.predicted_is_exact ? "exact" : "lower-bound";
    j["gap_widest"] = row.gap_widest;
    rows.push_back(std::move(j));
  }
  out["rows"] = std::move(rows);
  return out.dump(2) + "\n";
}

std::string comparison_to_csv(const ComparisonReport& r) {
  std::ostringstream out;
  out << "ipad";
  for (const std::string& w : r.windows) out << ',' << w;
  out << ",predicted,status,gap\n";
  for (const ComparisonRow& row : r.rows) {
    out << '"' << row.ipad << '"';
    for (const std::string& o : row.observed) out << ',' << o;
    out << ',' << row.predicted << ',' << (row.predicted_is_exact ? "exact" : "lower-bound")
        << ',' << row.gap_widest << '\n';
  }
  return out.str();
}

}  // namespace pcg
