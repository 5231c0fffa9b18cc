#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace herald::preprocess {

struct ReferenceStep {
  std::string expression;
  std::string value;

  friend bool operator==(const ReferenceStep&, const ReferenceStep&) = default;
};

struct Problem {
  std::string id;
  std::string statement_en;
  std::optional<std::string> statement_ru;
  std::optional<std::string> category;
  std::optional<std::string> reference_answer;
  std::optional<std::vector<ReferenceStep>> reference_steps;
  // Ordinals of numeric literals in statement_en that must not be perturbed.
  std::optional<std::vector<std::size_t>> critical_value_mask;

  // The English statement when present, otherwise the Russian one.
  const std::string& primary_statement() const;

  friend bool operator==(const Problem&, const Problem&) = default;
};

}  // namespace herald::preprocess
