#include "lccsem/derivation.hpp"

#include <array>

namespace lccsem {

namespace {

constexpr std::array<std::pair<Rule, std::string_view>, 10> rule_names{{
    {Rule::Lex, "lex"},
    {Rule::Hyp, "hyp"},
    {Rule::IProd, "IProd"},
    {Rule::EProd1, "EProd1"},
    {Rule::EProd2, "EProd2"},
    {Rule::IUnder, "IUnder"},
    {Rule::EUnder, "EUnder"},
    {Rule::IOver, "IOver"},
    {Rule::EOver, "EOver"},
    {Rule::EAnaph, "EAnaph"},
}};

void render(const Derivation& d, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += print_term(d.term) + " : " + print_formula(d.formula) + "  [" + std::string(rule_name(d.rule));
  switch (d.rule) {
    case Rule::Lex:
      out += " " + d.word;
      break;
    case Rule::Hyp:
    case Rule::IUnder:
    case Rule::IOver:
      out += " " + std::to_string(d.hyp);
      break;
    case Rule::EAnaph:
      out += " " + d.bind;
      break;
    case Rule::EProd2:
      out += " " + d.of;
      break;
    default:
      break;
  }
  out += "]";
  if (!d.label.empty()) out += " #" + d.label;
  out += '\n';
  for (const auto& p : d.premises) render(p, depth + 1, out);
}

}  // namespace

std::string_view rule_name(Rule r) {
  for (const auto& [rule, name] : rule_names)
    if (rule == r) return name;
  return "?";
}

std::optional<Rule> rule_from_name(std::string_view name) {
  for (const auto& [rule, n] : rule_names)
    if (n == name) return rule;
  return std::nullopt;
}

std::size_t Derivation::size() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.size();
  return n;
}

bool Derivation::contains_introduction() const {
  if (rule == Rule::IUnder || rule == Rule::IOver) return true;
  for (const auto& p : premises)
    if (p.contains_introduction()) return true;
  return false;
}

std::string Reading::kind() const {
  for (const auto& b : binding_map)
    if (b.abstraction) return "sloppy";
  return "strict";
}

ScriptNode to_script(const Derivation& d) {
  ScriptNode node;
  if (!d.label.empty()) node.attrs["label"] = d.label;
  switch (d.rule) {
    case Rule::Lex:
      node.head = "lex";
      node.args = {d.word, print_formula(d.formula)};
      return node;
    case Rule::Hyp:
      node.head = "hyp";
      node.args = {std::to_string(d.hyp), print_formula(d.formula)};
      return node;
    case Rule::IUnder:
    case Rule::IOver:
      node.attrs["hyp"] = std::to_string(d.hyp);
      break;
    case Rule::EAnaph:
      node.attrs["bind"] = d.bind;
      break;
    case Rule::EProd2:
      node.attrs["of"] = d.of;
      break;
    default:
      break;
  }
  node.head = std::string(rule_name(d.rule));
  for (const auto& p : d.premises) node.children.push_back(to_script(p));
  return node;
}

std::string render_tree(const Derivation& d) {
  std::string out;
  render(d, 0, out);
  return out;
}

}  // namespace lccsem
