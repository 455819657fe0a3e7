#include "paradet/report.hpp"

#include "json.hpp"

namespace paradet {

namespace {
using nlohmann::json;
}

std::string count_report_to_json(const CountReport& rep) {
  json j;
  j["schema"] = kReportSchema;
  j["kind"] = rep.kind;
  j["n"] = rep.n;
  if (rep.c) j["c"] = *rep.c;
  json counts = json::object();
  for (const auto& [name, value] : rep.counts) counts[name] = value.to_string();
  j["counts"] = counts;
  return j.dump();
}

std::string count_report_to_table(const CountReport& rep) {
  std::string out = rep.kind + " n=" + std::to_string(rep.n);
  if (rep.c) out += " c=" + std::to_string(*rep.c);
  out += "\n";
  for (const auto& [name, value] : rep.counts)
    out += "  " + name + ": " + value.to_string() + "\n";
  return out;
}

std::string growth_report_to_json(const GrowthReport& rep) {
  json j;
  j["schema"] = kReportSchema;
  j["kind"] = "growth";
  json rows = json::array();
  for (const GrowthRow& row : rep.rows)
    rows.push_back({{"n", row.n}, {"count", row.count.to_string()}, {"ratio", row.ratio}});
  j["rows"] = rows;
  j["flags"] = rep.flags;
  return j.dump();
}

std::string growth_report_to_table(const GrowthReport& rep) {
  std::string out = "n\tcount\tcount^(1/n)/n\n";
  char buf[64];
  for (const GrowthRow& row : rep.rows) {
    std::snprintf(buf, sizeof buf, "%.6f", row.ratio);
    out += std::to_string(row.n) + "\t" + row.count.to_string() + "\t" + buf + "\n";
  }
  for (const std::string& flag : rep.flags) out += "flag: " + flag + "\n";
  return out;
}

std::string counterexample_to_json(const LassoWord& w, const std::vector<std::string>& letters) {
  json j;
  j["schema"] = kReportSchema;
  j["kind"] = "counterexample";
  json stem = json::array(), cycle = json::array();
  for (std::uint32_t a : w.stem) stem.push_back(letters[a]);
  for (std::uint32_t a : w.cycle) cycle.push_back(letters[a]);
  j["stem"] = stem;
  j["cycle"] = cycle;
  return j.dump();
}

std::string letters_to_json(const std::vector<FullLetter>& letters) {
  json arr = json::array();
  for (const FullLetter& letter : letters) {
    json cells = json::array();
    for (const FullLetterCell& cell : letter.cells) {
      json target;
      if (cell.dst == kTopState)
        target = "top";
      else
        target = cell.dst;
      cells.push_back(json::array({cell.src, target, cell.priorities}));
    }
    arr.push_back(cells);
  }
  return arr.dump(2) + "\n";
}

std::vector<FullLetter> letters_from_json(const std::string& text, std::uint32_t n,
                                          std::uint32_t c) {
  json arr;
  try {
    arr = json::parse(text);
  } catch (const json::parse_error& err) {
    throw parse_error(err.what(), 1, 1);
  }
  if (!arr.is_array()) throw parse_error("letters file must be a JSON array", 1, 1);
  std::vector<FullLetter> out;
  for (const json& jletter : arr) {
    if (!jletter.is_array()) throw parse_error("each letter must be an array of cells", 1, 1);
    FullLetter letter;
    for (const json& jcell : jletter) {
      if (!jcell.is_array() || jcell.size() != 3)
        throw parse_error("each cell must be [source, target, [priorities]]", 1, 1);
      FullLetterCell cell;
      cell.src = jcell[0].get<state_t>();
      if (jcell[1].is_string()) {
        if (jcell[1].get<std::string>() != "top")
          throw parse_error("cell target must be a state index or \"top\"", 1, 1);
        cell.dst = kTopState;
      } else {
        cell.dst = jcell[1].get<state_t>();
      }
      cell.priorities = jcell[2].get<std::vector<std::uint32_t>>();
      letter.cells.push_back(std::move(cell));
    }
    std::sort(letter.cells.begin(), letter.cells.end(), [](const auto& a, const auto& b) {
      return a.src < b.src || (a.src == b.src && a.dst < b.dst);
    });
    validate(letter, n, c);
    out.push_back(std::move(letter));
  }
  return out;
}

}  // namespace paradet
