#include <sstream>

#include "bordcalc/ahss.hpp"

namespace bordcalc {

namespace {

struct Record {
  std::string table;
  std::string kind;
  std::vector<std::pair<std::string, std::string>> fields;
};

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string labels_of(const std::string& labelled) {
  auto colon = labelled.find(" : ");
  return colon == std::string::npos ? "" : labelled.substr(colon + 3);
}

std::string group_of(const std::string& labelled) {
  auto colon = labelled.find(" : ");
  return colon == std::string::npos ? labelled : labelled.substr(0, colon);
}

Record entry_record(const Pos& pos, const PageEntry& e, const std::string& page_name, bool edge) {
  std::string text = e.str();
  std::string flags;
  if (e.known && !e.cycles_exact) flags += " [cycles undetermined]";
  if (edge) flags += " [source only]";
  else if (e.known && !e.boundaries_exact) flags += " [boundaries undetermined]";
  Record rec{"  " + to_string(pos) + "  " + text + flags, "entry", {}};
  rec.fields = {{"page", page_name},
                {"p", std::to_string(pos.p)},
                {"q", std::to_string(pos.q)},
                {"group", quoted(group_of(text))},
                {"labels", quoted(labels_of(text))},
                {"cycles_exact", e.cycles_exact ? "true" : "false"},
                {"boundaries_exact", e.boundaries_exact ? "true" : "false"}};
  return rec;
}

bool same_entry(const PageEntry& a, const PageEntry& b) {
  return a.str() == b.str() && a.cycles_exact == b.cycles_exact && a.boundaries_exact == b.boundaries_exact;
}

std::string map_text(const SSRun& run, const Differential& d) {
  const SSPage& page = run.page(d.r);
  const PageEntry& s = *page.find(d.source);
  const PageEntry& t = *page.find(d.target);
  auto src_labels = s.generator_labels();
  std::vector<std::string> parts;
  const auto& tg = t.sub.generators();
  for (std::size_t j = 0; j < d.matrix.cols(); ++j) {
    IntMatrix col(d.matrix.rows(), 1);
    for (std::size_t i = 0; i < d.matrix.rows(); ++i) col(i, 0) = d.matrix(i, j);
    auto image = (tg * col).column(0);
    parts.push_back(src_labels[j] + " -> " + t.vector_label(image));
  }
  return join(parts, "; ");
}

std::vector<Record> records(const SSRun& run) {
  std::vector<Record> out;
  const auto& space = *run.space;
  out.push_back({"space " + space.name + "  coefficients " + run.row->name + "  " +
                     (space.reduced ? "reduced" : "unreduced") + "  n<=" + std::to_string(run.upto),
                 "header",
                 {{"space", quoted(space.name)},
                  {"coefficients", quoted(run.row->name)},
                  {"reduced", space.reduced ? "true" : "false"},
                  {"upto", std::to_string(run.upto)}}});

  const SSPage* previous = nullptr;
  for (std::size_t i = 0; i < run.pages.size(); ++i) {
    const SSPage& page = run.pages[i];
    std::string name = "E" + std::to_string(page.r);
    std::vector<Record> entries;
    for (const auto& [pos, e] : page.entries) {
      if (previous) {
        const PageEntry* before = previous->find(pos);
        if (before && same_entry(*before, e)) continue;
      } else if (e.is_zero()) {
        continue;
      }
      entries.push_back(entry_record(pos, e, std::to_string(page.r), pos.degree() > run.upto));
    }
    if (!entries.empty()) {
      out.push_back({name, "page", {{"page", std::to_string(page.r)}}});
      out.insert(out.end(), entries.begin(), entries.end());
    }
    if (i < run.differentials.size()) {
      for (const auto& d : run.differentials[i]) {
        std::string head = "  d" + std::to_string(d.r) + " " + to_string(d.source) + " -> " + to_string(d.target) +
                           "  " + to_string(d.status);
        std::string body;
        if (d.status == DiffStatus::Parameter) body = d.parameter;
        else if (d.determined()) body = d.matrix.is_zero() ? "0" : map_text(run, d);
        std::string table = head + (body.empty() ? "" : ": " + body) + (d.note.empty() ? "" : "  (" + d.note + ")");
        out.push_back({table,
                       "diff",
                       {{"r", std::to_string(d.r)},
                        {"p", std::to_string(d.source.p)},
                        {"q", std::to_string(d.source.q)},
                        {"tp", std::to_string(d.target.p)},
                        {"tq", std::to_string(d.target.q)},
                        {"status", to_string(d.status)},
                        {"value", quoted(body)},
                        {"note", quoted(d.note)}}});
      }
    }
    previous = &page;
  }

  out.push_back({"Einf", "page", {{"page", "inf"}}});
  for (const auto& [pos, e] : run.infinity().entries) {
    if (pos.degree() > run.upto || (e.is_zero() && e.exact())) continue;
    out.push_back(entry_record(pos, e, "inf", false));
  }

  out.push_back({"filtrations", "section", {{"name", "filtrations"}}});
  for (const auto& [n, rep] : run.reports) {
    if (rep.pieces.empty()) continue;
    std::vector<std::string> pieces;
    for (const auto& piece : rep.pieces) pieces.push_back(to_string(piece.pos) + " " + piece.entry.str());
    out.push_back({"  n=" + std::to_string(n) + ": " + join(pieces, " | "),
                   "pieces",
                   {{"n", std::to_string(n)}, {"pieces", quoted(join(pieces, " | "))}}});
    for (const auto& ext : rep.extensions) {
      std::string tag = ext.tag.empty() ? "" : " [" + ext.tag + "]";
      out.push_back({"    ext p=" + std::to_string(ext.p) + " " + to_string(ext.status) + tag +
                         (ext.note.empty() ? "" : "  " + ext.note),
                     "ext",
                     {{"n", std::to_string(n)},
                      {"p", std::to_string(ext.p)},
                      {"status", to_string(ext.status)},
                      {"tag", ext.tag},
                      {"note", quoted(ext.note)}}});
    }
    auto result = rep.result();
    std::string text = result && rep.status == ReportStatus::Resolved ? result->str() : rep.group_text();
    if (!rep.reason.empty()) text += "  (" + rep.reason + ")";
    out.push_back({"    F: " + text,
                   "stage",
                   {{"n", std::to_string(n)}, {"status", to_string(rep.status)}, {"value", quoted(text)}}});
  }

  out.push_back({"groups", "section", {{"name", "groups"}}});
  for (const auto& [n, rep] : run.reports)
    out.push_back({"n=" + std::to_string(n) + ": " + rep.group_text(),
                   "total",
                   {{"n", std::to_string(n)}, {"group", quoted(rep.group_text())}, {"status", to_string(rep.status)}}});
  return out;
}

}  // namespace

std::string render(const SSRun& run, OutputFormat format) {
  std::ostringstream os;
  for (const auto& rec : records(run)) {
    if (format == OutputFormat::Table) {
      os << rec.table << "\n";
      continue;
    }
    os << rec.kind;
    for (const auto& [k, v] : rec.fields) os << " " << k << "=" << v;
    os << "\n";
  }
  return os.str();
}

}  // namespace bordcalc
