#include "planrec/library.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "planrec/sexpr.hpp"

namespace planrec {

const TypeDef& PlanLibrary::type(std::string_view name) const {
  auto it = types_.find(name);
  if (it == types_.end()) throw ValidationError("unknown type '" + std::string(name) + "'");
  return it->second;
}

const PlanSchema& PlanLibrary::schema(std::string_view name) const {
  auto it = schemas_.find(name);
  if (it == schemas_.end()) throw ValidationError("unknown plan schema '" + std::string(name) + "'");
  return it->second;
}

bool PlanLibrary::has_word(std::string_view word) const {
  return std::any_of(lexicon_.begin(), lexicon_.end(), [&](const LexEntry& e) { return e.word == word; });
}

std::vector<const LexEntry*> PlanLibrary::senses(std::string_view word) const {
  std::vector<const LexEntry*> out;
  for (const auto& e : lexicon_)
    if (e.word == word) out.push_back(&e);
  return out;
}

std::optional<double> PlanLibrary::p_word(std::string_view word, std::string_view sense) const {
  for (const auto& e : lexicon_)
    if (e.word == word && e.sense == sense) return e.p_word;
  return std::nullopt;
}

double PlanLibrary::min_p_word() const {
  double m = 1.0;
  for (const auto& e : lexicon_) m = std::min(m, e.p_word);
  return m;
}

std::vector<const PlanSchema*> PlanLibrary::triggers_for_type(std::string_view type_name) const {
  type(type_name);
  std::vector<const PlanSchema*> out;
  for (const auto& [name, s] : schemas_)
    if (s.specializes == type_name) out.push_back(&s);
  return out;
}

std::vector<std::pair<const PlanSchema*, const SlotDef*>> PlanLibrary::slots_accepting(
    std::string_view type_name) const {
  type(type_name);
  std::vector<std::pair<const PlanSchema*, const SlotDef*>> out;
  for (const auto& [name, s] : schemas_)
    for (const auto& slot : s.slots)
      if (slot.restriction == type_name) out.emplace_back(&s, &slot);
  return out;
}

bool PlanLibrary::slot_name_ambiguous(std::string_view slot_name) const {
  auto it = slot_name_uses_.find(slot_name);
  return it != slot_name_uses_.end() && it->second > 1;
}

// --- Builder ---------------------------------------------------------------

namespace {

// Heads used by network node labels.
bool is_reserved(std::string_view name) {
  return name == "=" || name == "word" || name == "mention" || name == "exclusive";
}

}  // namespace

PlanLibrary::Builder& PlanLibrary::Builder::type(std::string name, double prior, SourcePos pos) {
  types_.push_back({TypeDef{std::move(name), prior}, pos});
  return *this;
}

PlanLibrary::Builder& PlanLibrary::Builder::word(std::string word, std::string sense, double p_word,
                                                 SourcePos pos) {
  words_.push_back({LexEntry{std::move(word), std::move(sense), p_word}, pos});
  return *this;
}

PlanLibrary::Builder& PlanLibrary::Builder::plan(std::string name, std::string specializes, double p,
                                                 std::vector<SlotDef> slots, SourcePos pos) {
  plans_.push_back({PlanSchema{std::move(name), std::move(specializes), p, std::move(slots)}, pos});
  return *this;
}

PlanLibrary PlanLibrary::Builder::build() const {
  PlanLibrary lib;
  for (const auto& [t, pos] : types_) {
    if (is_reserved(t.name))
      throw ValidationError("type name '" + t.name + "' is reserved", pos);
    if (!(t.prior > 0.0 && t.prior < 1.0))
      throw ValidationError("type '" + t.name + "': prior must lie strictly between 0 and 1", pos);
    if (!lib.types_.emplace(t.name, t).second)
      throw ValidationError("duplicate type '" + t.name + "'", pos);
  }
  std::set<std::pair<std::string, std::string>> seen_words;
  for (const auto& [w, pos] : words_) {
    if (!lib.has_type(w.sense))
      throw ValidationError("word \"" + w.word + "\": unknown sense type '" + w.sense + "'", pos);
    if (!(w.p_word > 0.0 && w.p_word <= 1.0))
      throw ValidationError("word \"" + w.word + "\": p must lie in (0, 1]", pos);
    if (!seen_words.emplace(w.word, w.sense).second)
      throw ValidationError("duplicate lexicon entry \"" + w.word + "\" :sense " + w.sense, pos);
    lib.lexicon_.push_back(w);
  }
  for (const auto& [p, pos] : plans_) {
    if (is_reserved(p.name)) throw ValidationError("plan name '" + p.name + "' is reserved", pos);
    if (lib.has_type(p.name))
      throw ValidationError("plan '" + p.name + "' collides with a type of the same name", pos);
    if (!lib.has_type(p.specializes))
      throw ValidationError("plan '" + p.name + "': unknown type '" + p.specializes + "' in :specializes", pos);
    if (!(p.p_given_parent > 0.0 && p.p_given_parent < 1.0))
      throw ValidationError("plan '" + p.name + "': p must lie strictly between 0 and 1", pos);
    std::set<std::string> slot_names;
    for (const auto& s : p.slots) {
      if (!slot_names.insert(s.name).second)
        throw ValidationError("plan '" + p.name + "': duplicate slot '" + s.name + "'", pos);
      if (!lib.has_type(s.restriction))
        throw ValidationError("plan '" + p.name + "': slot '" + s.name + "' restricted to unknown type '" +
                                  s.restriction + "'",
                              pos);
    }
    if (!lib.schemas_.emplace(p.name, p).second)
      throw ValidationError("duplicate plan '" + p.name + "'", pos);
    for (const auto& s : p.slots) ++lib.slot_name_uses_[s.name];
  }

  // A schema links its specialized type to each slot restriction type. Network
  // construction follows these links, so they must not form a cycle.
  std::map<std::string, std::set<std::string>> edges;
  for (const auto& [name, s] : lib.schemas_)
    for (const auto& slot : s.slots) edges[s.specializes].insert(slot.restriction);
  std::map<std::string, int> state;  // 0 unvisited, 1 on stack, 2 done
  std::function<void(const std::string&)> visit = [&](const std::string& t) {
    state[t] = 1;
    for (const auto& u : edges[t]) {
      if (state[u] == 1) throw ValidationError("cyclic plan schema dependency through type '" + u + "'");
      if (state[u] == 0) visit(u);
    }
    state[t] = 2;
  };
  for (const auto& [name, t] : lib.types_)
    if (state[name] == 0) visit(name);
  return lib;
}

// --- DSL -------------------------------------------------------------------

namespace {

const Sexpr::List& expect_form(const Sexpr& e, std::string_view head) {
  if (!e.is_list() || e.as_list().empty() || !e.as_list().front().is_symbol(head))
    throw ValidationError("expected a (" + std::string(head) + " ...) form", e.pos());
  return e.as_list();
}

const std::string& expect_name(const Sexpr& e, std::string_view what) {
  if (!e.is_symbol()) throw ValidationError("expected a name for " + std::string(what), e.pos());
  return e.as_symbol();
}

double expect_number(const Sexpr& e, std::string_view what) {
  if (!e.is_number()) throw ValidationError("expected a number for " + std::string(what), e.pos());
  return e.as_number();
}

void expect_keyword(const Sexpr& e, std::string_view kw) {
  if (!e.is_symbol(kw)) throw ValidationError("expected keyword " + std::string(kw), e.pos());
}

void expect_arity(const Sexpr& form, std::size_t n, std::string_view usage) {
  if (form.as_list().size() != n) throw ValidationError("malformed form, expected " + std::string(usage), form.pos());
}

}  // namespace

PlanLibrary load_library(std::string_view text) {
  Sexpr top = parse_sexpr(text);
  const auto& items = expect_form(top, "library");
  PlanLibrary::Builder b;
  for (std::size_t i = 1; i < items.size(); ++i) {
    const Sexpr& decl = items[i];
    if (!decl.is_list() || decl.as_list().empty() || !decl.as_list().front().is_symbol())
      throw ValidationError("expected a (type ...), (word ...) or (plan ...) declaration", decl.pos());
    const auto& f = decl.as_list();
    const std::string& head = f.front().as_symbol();
    if (head == "type") {
      expect_arity(decl, 4, "(type NAME :prior NUMBER)");
      expect_keyword(f[2], ":prior");
      b.type(expect_name(f[1], "type"), expect_number(f[3], ":prior"), decl.pos());
    } else if (head == "word") {
      expect_arity(decl, 6, "(word STRING :sense NAME :p NUMBER)");
      if (!f[1].is_string()) throw ValidationError("expected a quoted word", f[1].pos());
      expect_keyword(f[2], ":sense");
      expect_keyword(f[4], ":p");
      b.word(f[1].as_string(), expect_name(f[3], ":sense"), expect_number(f[5], ":p"), decl.pos());
    } else if (head == "plan") {
      if (f.size() < 6) throw ValidationError("malformed form, expected (plan NAME :specializes NAME :p NUMBER slot*)", decl.pos());
      expect_keyword(f[2], ":specializes");
      expect_keyword(f[4], ":p");
      std::vector<SlotDef> slots;
      for (std::size_t j = 6; j < f.size(); ++j) {
        const auto& s = expect_form(f[j], "slot");
        expect_arity(f[j], 3, "(slot NAME TYPE)");
        slots.push_back({expect_name(s[1], "slot"), expect_name(s[2], "slot restriction")});
      }
      b.plan(expect_name(f[1], "plan"), expect_name(f[3], ":specializes"), expect_number(f[5], ":p"),
             std::move(slots), decl.pos());
    } else {
      throw ValidationError("unknown declaration '" + head + "'", decl.pos());
    }
  }
  return b.build();
}

void validate_story(const Story& story, const PlanLibrary& lib) {
  std::set<std::string> entities;
  for (const auto& t : story.tokens) {
    if (!lib.has_word(t.word)) throw ValidationError("unknown word \"" + t.word + "\"");
    if (!entities.insert(t.entity).second) throw ValidationError("duplicate entity '" + t.entity + "'");
  }
}

Story load_story(std::string_view text, const PlanLibrary& lib) {
  Sexpr top = parse_sexpr(text);
  const auto& items = expect_form(top, "story");
  Story story;
  std::set<std::string> entities;
  for (std::size_t i = 1; i < items.size(); ++i) {
    const auto& f = expect_form(items[i], "token");
    expect_arity(items[i], 3, "(token STRING NAME)");
    if (!f[1].is_string()) throw ValidationError("expected a quoted word", f[1].pos());
    const std::string& word = f[1].as_string();
    const std::string& entity = expect_name(f[2], "entity");
    if (!lib.has_word(word)) throw ValidationError("unknown word \"" + word + "\"", f[1].pos());
    if (!entities.insert(entity).second) throw ValidationError("duplicate entity '" + entity + "'", f[2].pos());
    story.tokens.push_back({word, entity});
  }
  return story;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace planrec
