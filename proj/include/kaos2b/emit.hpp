#ifndef KAOS2B_EMIT_HPP
#define KAOS2B_EMIT_HPP

#include <span>
#include <string>
#include <vector>

#include "kaos2b/bsystem.hpp"
#include "kaos2b/domain_model.hpp"
#include "kaos2b/goal_engine.hpp"
#include "kaos2b/goal_model.hpp"
#include "kaos2b/translate.hpp"

namespace kaos2b {

/// Deterministic `.bsys` text; clause order SYSTEM|REFINEMENT, REFINES, SETS,
/// CONSTANTS, PROPERTIES, VARIABLES, INVARIANT, INITIALISATION, events, END.
std::string print_component(const Component& c, Notation notation = Notation::Ascii);

/// Deterministic `.dmod` text; inverse of parse_domain_model.
std::string print_domain_model(const DomainModel& m);

/// Deterministic `.gmod` text; inverse of parse_goal_model.
std::string print_goal_model(const GoalModel& gm);

/// Line-oriented trace file: '#' header lines, then one
/// kind<TAB>domain_qname<TAB>b_qname record per correspondence, sorted.
std::string print_trace(const CorrespondenceTrace& trace,
                        std::span<const std::string> header_lines = {});

CorrespondenceTrace load_trace(std::string_view text);

/// Expanded proof-obligation theorems, one block per component.
std::string print_po_file(std::span<const PoBlock> blocks, Notation notation = Notation::Ascii);

}  // namespace kaos2b

#endif
