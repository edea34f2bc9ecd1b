#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include "buchidet/automata.hh"

namespace buchidet {

/// Result of reading an HOA document: either a state-based Büchi automaton or
/// a complete transition-based `parity min even` automaton.
using HoaAutomaton = std::variant<Nba, Dpa>;

/// Parses an HOA v1 document. Throws ParseError with the offending line.
[[nodiscard]] HoaAutomaton parse_hoa(std::string_view text);
[[nodiscard]] Nba parse_nba(std::string_view text);
[[nodiscard]] Dpa parse_dpa(std::string_view text);

[[nodiscard]] std::string emit_hoa(Nba const& nba, std::string const& name = {});
/// Priorities are compacted (order and parity preserved) before writing; one
/// acceptance set per priority value.
[[nodiscard]] std::string emit_hoa(Dpa const& dpa, std::string const& name = {});

[[nodiscard]] std::string read_file(std::string const& path);

}  // namespace buchidet
