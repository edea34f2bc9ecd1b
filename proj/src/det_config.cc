#include "buchidet/det_config.hh"

#include <stdexcept>

namespace buchidet {

char const* to_string(MergeStrategy m) {
  switch (m) {
    case MergeStrategy::muller_schupp: return "ms";
    case MergeStrategy::safra: return "safra";
    case MergeStrategy::max_collapse: return "max";
  }
  return "?";
}

MergeStrategy parse_merge(std::string_view s) {
  if (s == "ms") return MergeStrategy::muller_schupp;
  if (s == "safra") return MergeStrategy::safra;
  if (s == "max") return MergeStrategy::max_collapse;
  throw std::invalid_argument("unknown merge strategy '" + std::string(s) + "'");
}

DetConfig DetConfig::from_opts(std::string_view opts, MergeStrategy merge) {
  DetConfig c;
  c.merge = merge;
  if (opts == "def") return c;
  for (char ch : opts) {
    switch (ch) {
      case 'T': c.topological = true; break;
      case 'E': c.external_inclusion = true; break;
      case 'I': c.internal_inclusion = true; break;
      case 'M': c.minimize = true; break;
      case 'S': c.smart_successors = true; break;
      case 'A': c.acc_breakpoint = true; break;
      case 'W': c.weak_separation = true; break;
      case 'D': c.det_scc_mode = true; break;
      case ',':
      case '+':
      case ' ': break;
      default: throw std::invalid_argument(std::string("unknown option letter '") + ch + "'");
    }
  }
  return c;
}

std::string DetConfig::opts_string() const {
  std::string s;
  if (topological) s += 'T';
  if (external_inclusion) s += 'E';
  if (internal_inclusion) s += 'I';
  if (minimize) s += 'M';
  if (smart_successors) s += 'S';
  if (acc_breakpoint) s += 'A';
  if (weak_separation) s += 'W';
  if (det_scc_mode) s += 'D';
  return s.empty() ? "def" : s;
}

}  // namespace buchidet
