#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "planrec/error.hpp"

namespace planrec {

struct TypeDef {
  std::string name;
  double prior = 0.0;  // base rate of an arbitrary entity having this type
};

struct LexEntry {
  std::string word;
  std::string sense;  // a TypeDef name
  double p_word = 1.0;
};

struct SlotDef {
  std::string name;
  std::string restriction;  // a TypeDef name
};

struct PlanSchema {
  std::string name;
  std::string specializes;  // the general action this plan is a way of doing
  double p_given_parent = 0.0;
  std::vector<SlotDef> slots;
};

/// Types, lexicon and plan schemas. Immutable once built by load_library or
/// PlanLibrary::Builder; every cross-reference is guaranteed to resolve.
class PlanLibrary {
 public:
  class Builder;

  PlanLibrary() = default;

  using TypeMap = std::map<std::string, TypeDef, std::less<>>;
  using SchemaMap = std::map<std::string, PlanSchema, std::less<>>;

  const TypeMap& types() const { return types_; }
  const std::vector<LexEntry>& lexicon() const { return lexicon_; }
  const SchemaMap& schemas() const { return schemas_; }

  const TypeDef& type(std::string_view name) const;
  const PlanSchema& schema(std::string_view name) const;
  bool has_type(std::string_view name) const { return types_.find(name) != types_.end(); }
  bool has_word(std::string_view word) const;

  /// Lexicon entries for `word`, in declaration order.
  std::vector<const LexEntry*> senses(std::string_view word) const;
  /// p_word of the (word, sense) pair, or nullopt when the pair is not declared.
  std::optional<double> p_word(std::string_view word, std::string_view sense) const;
  double min_p_word() const;

  /// Schemas whose `specializes` is `type_name`, ordered by name.
  std::vector<const PlanSchema*> triggers_for_type(std::string_view type_name) const;
  /// (schema, slot) pairs whose restriction is `type_name`, ordered by schema then slot order.
  std::vector<std::pair<const PlanSchema*, const SlotDef*>> slots_accepting(std::string_view type_name) const;

  /// True when more than one schema declares a slot called `slot_name`.
  bool slot_name_ambiguous(std::string_view slot_name) const;

 private:
  TypeMap types_;
  std::vector<LexEntry> lexicon_;
  SchemaMap schemas_;
  std::map<std::string, int, std::less<>> slot_name_uses_;
};

/// Programmatic construction with the same validation as load_library.
class PlanLibrary::Builder {
 public:
  Builder& type(std::string name, double prior, SourcePos pos = {});
  Builder& word(std::string word, std::string sense, double p_word, SourcePos pos = {});
  Builder& plan(std::string name, std::string specializes, double p, std::vector<SlotDef> slots,
                SourcePos pos = {});
  PlanLibrary build() const;

 private:
  std::vector<std::pair<TypeDef, SourcePos>> types_;
  std::vector<std::pair<LexEntry, SourcePos>> words_;
  std::vector<std::pair<PlanSchema, SourcePos>> plans_;
};

struct Token {
  std::string word;
  std::string entity;
};

struct Story {
  std::vector<Token> tokens;
};

PlanLibrary load_library(std::string_view text);
Story load_story(std::string_view text, const PlanLibrary& lib);

/// Checks a story against a library: known words, fresh entities.
void validate_story(const Story& story, const PlanLibrary& lib);

/// Reads a whole file; throws ParseError naming the path when it cannot be read.
std::string read_file(const std::string& path);

}  // namespace planrec
