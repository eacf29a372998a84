#include "cpc/spec_file.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "cpc/errors.hpp"

namespace cpc {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) out.push_back(trim(part));
  return out;
}

struct Line {
  int number;
  std::string key;
  std::string value;
};

struct Section {
  int line = 0;
  std::string kind;
  std::string name;
  std::vector<Line> entries;
};

int to_int(const std::string& s, int line, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw SpecFormatError(line, "expected an integer for " + what + ", got '" + s + "'");
}

int index_in_range(const std::string& s, int dim, int line) {
  const int i = to_int(s, line, "an index");
  if (i < 0 || i >= dim) {
    throw SpecFormatError(line, "index " + std::to_string(i) + " out of range for dimension " + std::to_string(dim));
  }
  return i;
}

Expr parse_at(const std::string& text, int dim, int line) {
  try {
    return parse(text, dim);
  } catch (const Error& e) {
    throw SpecFormatError(line, e.what());
  }
}

double number_at(const std::string& text, int dim, int line) {
  const Expr e = parse_at(text, dim, line);
  if (e.max_variable_index() >= 0) throw SpecFormatError(line, "box bound must be a constant: '" + text + "'");
  const std::vector<double> origin(static_cast<std::size_t>(dim), 0.0);
  return evaluate(e, origin);
}

std::vector<Section> read_sections(std::string_view text) {
  std::vector<Section> sections;
  std::istringstream in{std::string(text)};
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw SpecFormatError(number, "unterminated section header");
      const std::vector<std::string> words = split(trim(line.substr(1, line.size() - 2)), ' ');
      Section s;
      s.line = number;
      for (const std::string& w : words) {
        if (w.empty()) continue;
        if (s.kind.empty()) {
          s.kind = w;
        } else if (s.name.empty()) {
          s.name = w;
        } else {
          throw SpecFormatError(number, "too many words in section header");
        }
      }
      sections.push_back(std::move(s));
      continue;
    }
    if (sections.empty()) throw SpecFormatError(number, "entry outside any section");
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw SpecFormatError(number, "expected 'key = value'");
    sections.back().entries.push_back({number, trim(line.substr(0, eq)), trim(line.substr(eq + 1))});
  }
  return sections;
}

}  // namespace

std::optional<ContactPairStructure> LoadedSpec::structure() const {
  if (!pair) return std::nullopt;
  return ContactPairStructure(manifold, pair->names, pair->p, pair->q);
}

LoadedSpec parse_spec(std::string_view text) {
  const std::vector<Section> sections = read_sections(text);
  const Section* header = nullptr;
  const Section* coords = nullptr;
  for (const Section& s : sections) {
    if (s.kind == "manifold") header = &s;
    if (s.kind == "coords") coords = &s;
  }
  if (header == nullptr) throw SpecFormatError(1, "missing [manifold] section");

  std::string name;
  int dim = 0;
  for (const Line& l : header->entries) {
    if (l.key == "name") {
      name = l.value;
    } else if (l.key == "dim") {
      dim = to_int(l.value, l.number, "dim");
      if (dim <= 0) throw SpecFormatError(l.number, "dim must be positive");
    } else {
      throw SpecFormatError(l.number, "unknown key '" + l.key + "' in [manifold]");
    }
  }
  if (dim == 0) throw SpecFormatError(header->line, "[manifold] needs dim");

  std::vector<std::string> coord_names;
  for (int i = 0; i < dim; ++i) coord_names.push_back("x" + std::to_string(i));
  if (coords != nullptr) {
    for (const Line& l : coords->entries) {
      if (l.key != "names") throw SpecFormatError(l.number, "unknown key '" + l.key + "' in [coords]");
      coord_names = split(l.value, ',');
      if (static_cast<int>(coord_names.size()) != dim) {
        throw SpecFormatError(l.number, "expected " + std::to_string(dim) + " coordinate names");
      }
    }
  }

  std::vector<Interval> box(static_cast<std::size_t>(dim));
  std::vector<bool> have_box(static_cast<std::size_t>(dim), false);
  int box_line = header->line;
  for (const Section& s : sections) {
    if (s.kind != "box") continue;
    box_line = s.line;
    for (const Line& l : s.entries) {
      const int i = index_in_range(l.key, dim, l.number);
      const std::vector<std::string> bounds = split(l.value, ',');
      if (bounds.size() != 2) throw SpecFormatError(l.number, "box entry needs 'lo, hi'");
      const double lo = number_at(bounds[0], dim, l.number);
      const double hi = number_at(bounds[1], dim, l.number);
      if (!(lo <= hi)) throw SpecFormatError(l.number, "box bounds out of order");
      box[static_cast<std::size_t>(i)] = {lo, hi};
      have_box[static_cast<std::size_t>(i)] = true;
    }
  }
  for (int i = 0; i < dim; ++i) {
    if (!have_box[static_cast<std::size_t>(i)]) {
      throw SpecFormatError(box_line, "no box interval for coordinate " + std::to_string(i));
    }
  }

  auto m = std::make_shared<ChartedManifold>(name, coord_names, box);
  std::optional<PairSpec> pair;
  const Expr zero = Expr::constant(0.0);
  for (const Section& s : sections) {
    if (s.kind == "manifold" || s.kind == "coords" || s.kind == "box") continue;
    const bool named = s.kind == "form" || s.kind == "vector" || s.kind == "endo";
    if (named && s.name.empty()) throw SpecFormatError(s.line, "[" + s.kind + "] needs a name");
    if (s.kind == "metric") {
      for (const Line& l : s.entries) {
        const std::vector<std::string> ij = split(l.key, ' ');
        std::vector<std::string> idx;
        for (const std::string& w : ij) {
          if (!w.empty()) idx.push_back(w);
        }
        if (idx.size() != 2) throw SpecFormatError(l.number, "metric entry needs 'i j = expr'");
        const int i = index_in_range(idx[0], dim, l.number);
        const int j = index_in_range(idx[1], dim, l.number);
        if (i > j) throw SpecFormatError(l.number, "metric entries are given for i <= j only");
        m->set_metric(i, j, parse_at(l.value, dim, l.number));
      }
    } else if (s.kind == "form" || s.kind == "vector") {
      std::vector<Expr> comps(static_cast<std::size_t>(dim), zero);
      for (const Line& l : s.entries) {
        comps[static_cast<std::size_t>(index_in_range(l.key, dim, l.number))] = parse_at(l.value, dim, l.number);
      }
      if (s.kind == "form") {
        m->add_one_form(s.name, comps);
      } else {
        m->add_vector_field(s.name, comps);
      }
    } else if (s.kind == "endo") {
      std::vector<Expr> comps(static_cast<std::size_t>(dim * dim), zero);
      for (const Line& l : s.entries) {
        std::vector<std::string> idx;
        for (const std::string& w : split(l.key, ' ')) {
          if (!w.empty()) idx.push_back(w);
        }
        if (idx.size() != 2) throw SpecFormatError(l.number, "endomorphism entry needs 'i j = expr'");
        const int i = index_in_range(idx[0], dim, l.number);
        const int j = index_in_range(idx[1], dim, l.number);
        comps[static_cast<std::size_t>(i * dim + j)] = parse_at(l.value, dim, l.number);
      }
      m->add_endomorphism(s.name, comps);
    } else if (s.kind == "pair") {
      PairSpec ps;
      for (const Line& l : s.entries) {
        if (l.key == "alpha1") ps.names.alpha1 = l.value;
        else if (l.key == "alpha2") ps.names.alpha2 = l.value;
        else if (l.key == "Z1") ps.names.z1 = l.value;
        else if (l.key == "Z2") ps.names.z2 = l.value;
        else if (l.key == "phi") ps.names.phi = l.value;
        else if (l.key == "p") ps.p = to_int(l.value, l.number, "p");
        else if (l.key == "q") ps.q = to_int(l.value, l.number, "q");
        else throw SpecFormatError(l.number, "unknown key '" + l.key + "' in [pair]");
      }
      pair = ps;
      if (2 * ps.p + 2 * ps.q + 2 != dim) {
        throw SpecFormatError(s.line, "pair type (" + std::to_string(ps.p) + ", " + std::to_string(ps.q) +
                                          ") does not match dim " + std::to_string(dim));
      }
    } else {
      throw SpecFormatError(s.line, "unknown section [" + s.kind + "]");
    }
  }
  if (pair) {
    const PairFieldNames& n = pair->names;
    int line = 0;
    for (const Section& s : sections) {
      if (s.kind == "pair") line = s.line;
    }
    if (!m->has_one_form(n.alpha1)) throw SpecFormatError(line, "pair refers to unknown form '" + n.alpha1 + "'");
    if (!m->has_one_form(n.alpha2)) throw SpecFormatError(line, "pair refers to unknown form '" + n.alpha2 + "'");
    if (!m->has_vector_field(n.z1)) throw SpecFormatError(line, "pair refers to unknown vector '" + n.z1 + "'");
    if (!m->has_vector_field(n.z2)) throw SpecFormatError(line, "pair refers to unknown vector '" + n.z2 + "'");
    if (!m->has_endomorphism(n.phi)) throw SpecFormatError(line, "pair refers to unknown endomorphism '" + n.phi + "'");
  }
  return LoadedSpec{m, pair};
}

LoadedSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecFormatError(0, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

std::string export_spec(const ChartedManifold& m, const std::optional<PairSpec>& pair) {
  const int n = m.dim();
  std::ostringstream out;
  auto number = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  auto is_zero = [](const Expr& e) { return e.is_constant() && e.constant_value() == 0.0; };

  out << "[manifold]\nname = " << m.name() << "\ndim = " << n << "\n\n[coords]\nnames = ";
  for (int i = 0; i < n; ++i) out << (i ? ", " : "") << m.coord_names()[static_cast<std::size_t>(i)];
  out << "\n\n[box]\n";
  for (int i = 0; i < n; ++i) {
    const Interval& iv = m.sample_box()[static_cast<std::size_t>(i)];
    out << i << " = " << number(iv.lo) << ", " << number(iv.hi) << "\n";
  }
  out << "\n[metric]\n";
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (!is_zero(m.metric(i, j))) out << i << " " << j << " = " << m.metric(i, j).to_string() << "\n";
    }
  for (const auto& [name, comps] : m.one_forms()) {
    out << "\n[form " << name << "]\n";
    for (int i = 0; i < n; ++i) {
      if (!is_zero(comps[static_cast<std::size_t>(i)])) out << i << " = " << comps[static_cast<std::size_t>(i)].to_string() << "\n";
    }
  }
  for (const auto& [name, comps] : m.vector_fields()) {
    out << "\n[vector " << name << "]\n";
    for (int i = 0; i < n; ++i) {
      if (!is_zero(comps[static_cast<std::size_t>(i)])) out << i << " = " << comps[static_cast<std::size_t>(i)].to_string() << "\n";
    }
  }
  for (const auto& [name, comps] : m.endomorphisms()) {
    out << "\n[endo " << name << "]\n";
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Expr& e = comps[static_cast<std::size_t>(i * n + j)];
        if (!is_zero(e)) out << i << " " << j << " = " << e.to_string() << "\n";
      }
  }
  if (pair) {
    out << "\n[pair]\nalpha1 = " << pair->names.alpha1 << "\nalpha2 = " << pair->names.alpha2
        << "\nZ1 = " << pair->names.z1 << "\nZ2 = " << pair->names.z2 << "\nphi = " << pair->names.phi
        << "\np = " << pair->p << "\nq = " << pair->q << "\n";
  }
  return out.str();
}

}  // namespace cpc
