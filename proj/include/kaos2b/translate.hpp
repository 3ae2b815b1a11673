#ifndef KAOS2B_TRANSLATE_HPP
#define KAOS2B_TRANSLATE_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kaos2b/bsystem.hpp"
#include "kaos2b/domain_model.hpp"

namespace kaos2b {

// Correspondence kinds. Each kind holds an injective map from qualified
// domain-model names to qualified B System names.
namespace trace_kind {
inline constexpr const char* DomainModel = "domain_model";
inline constexpr const char* ConceptSet = "concept_set";
inline constexpr const char* ConceptConstant = "concept_constant";
inline constexpr const char* ConceptVariable = "concept_variable";
inline constexpr const char* DataSet = "data_set";
inline constexpr const char* DataValueItem = "data_value_item";
inline constexpr const char* DataValueConstant = "data_value_constant";
inline constexpr const char* Individual = "individual";
inline constexpr const char* RelationType = "relation_type";
inline constexpr const char* RelationElement = "relation_element";
inline constexpr const char* AttributeType = "attribute_type";
inline constexpr const char* AttributeElement = "attribute_element";
inline constexpr const char* Predicate = "predicate";
}  // namespace trace_kind

/// Injective partial maps linking each domain-model element to its B System
/// correspondent. Qualified names are `model.element` on the left and
/// `component.element` on the right; enumerated values carry their owning set
/// (`model.set.value`).
struct CorrespondenceTrace {
  std::map<std::string, std::map<std::string, std::string>> maps;

  void add(const std::string& kind, const std::string& domain_qname, const std::string& b_qname);
  std::optional<std::string> find(const std::string& kind, const std::string& domain_qname) const;

  /// Reverse lookup of a plain B-side name within the given components.
  /// Returns the domain-side qualified name.
  std::optional<std::string> reverse_find(const std::string& kind, const std::string& b_name,
                                          std::span<const std::string> component_names) const;

  /// Empty when every map is injective; otherwise one message per breach.
  std::vector<std::string> injectivity_issues() const;

  bool operator==(const CorrespondenceTrace&) const = default;
};

/// Empty when every element of the chain has a correspondent of the expected
/// kind; otherwise one message per missing entry.
std::vector<std::string> totality_issues(const CorrespondenceTrace& trace,
                                         std::span<const DomainModel> chain);

struct TranslateOptions {
  bool expand_cardinalities = false;
};

struct TranslateResult {
  std::vector<Component> components;
  CorrespondenceTrace trace;
};

/// Translates a root-first, parent-linked chain of validated domain models
/// into one component per level plus the correspondence trace.
/// Throws ValidationFailed when a level does not validate, TranslateError on
/// unresolved references or broken chain ordering.
TranslateResult translate_project(std::span<const DomainModel> chain,
                                  const TranslateOptions& options = {});

/// Cardinality-ladder arrow for the given bounds (da/di = domain max/min,
/// ra/ri = range max/min).
ArrowKind relation_arrow(const Cardinality& domain_card, const Cardinality& range_card);

/// Auto-generated names (DataSet_k) for anonymous enumerations, keyed by
/// (level, attribute index); the counter is global across the chain.
std::map<std::pair<int, int>, std::string> anonymous_set_names(std::span<const DomainModel> chain);

/// Soundness of the property/invariant split: no variable mentioned under
/// PROPERTIES, at least one under INVARIANT (theorems excluded). Returns one
/// message per breach.
std::vector<std::string> classification_soundness_issues(std::span<const Component> components);

/// Every constant and variable carries exactly one typing formula.
std::vector<std::string> typing_coverage_issues(const Component& comp);

}  // namespace kaos2b

#endif
