#include "gips/gipsl/ast.hpp"

namespace gips {

std::string_view to_string(ContextKind kind) {
  switch (kind) {
    case ContextKind::kClass:
      return "class";
    case ContextKind::kPattern:
      return "pattern";
    case ContextKind::kMapping:
      return "mapping";
  }
  return "?";
}

std::string_view to_string(Sense sense) {
  return sense == Sense::kMin ? "min" : "max";
}

std::string ConstraintDecl::label() const {
  return "constraint -> " + std::string(to_string(context.kind)) +
         "::" + context.target + " (line " + std::to_string(loc.line) + ")";
}

namespace {

template <typename T>
const T* find_named(const std::vector<T>& items, std::string_view name) {
  for (const T& item : items) {
    if (item.name == name) return &item;
  }
  return nullptr;
}

bool same_context(const Context& a, const Context& b) {
  return a.kind == b.kind && a.target == b.target;
}

bool same_pattern(const Pattern& a, const Pattern& b) {
  if (a.name != b.name || a.nodes.size() != b.nodes.size() ||
      a.edges.size() != b.edges.size() || !same_expr(a.condition, b.condition)) {
    return false;
  }
  for (size_t i = 0; i < a.nodes.size(); ++i) {
    if (a.nodes[i].name != b.nodes[i].name || a.nodes[i].type != b.nodes[i].type) {
      return false;
    }
  }
  for (size_t i = 0; i < a.edges.size(); ++i) {
    if (a.edges[i].name() != b.edges[i].name()) return false;
  }
  return true;
}

bool same_action(const RuleAction& a, const RuleAction& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      Overloaded{
          [&](const CreateNodeAction& x) {
            const auto& y = std::get<CreateNodeAction>(b);
            if (x.name != y.name || x.type != y.type || x.init.size() != y.init.size()) {
              return false;
            }
            for (size_t i = 0; i < x.init.size(); ++i) {
              if (x.init[i].first != y.init[i].first ||
                  !same_expr(x.init[i].second, y.init[i].second)) {
                return false;
              }
            }
            return true;
          },
          [&](const CreateEdgeAction& x) {
            const auto& y = std::get<CreateEdgeAction>(b);
            return x.type == y.type && x.src == y.src && x.tgt == y.tgt;
          },
          [&](const DeleteEdgeAction& x) {
            const auto& y = std::get<DeleteEdgeAction>(b);
            return x.type == y.type && x.src == y.src && x.tgt == y.tgt;
          },
          [&](const DeleteNodeAction& x) {
            return x.name == std::get<DeleteNodeAction>(b).name;
          },
          [&](const SetAttrAction& x) {
            const auto& y = std::get<SetAttrAction>(b);
            return x.node == y.node && x.attribute == y.attribute &&
                   same_expr(x.value, y.value);
          },
      },
      a);
}

template <typename T, typename Eq>
bool same_list(const std::vector<T>& a, const std::vector<T>& b, Eq eq) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!eq(a[i], b[i])) return false;
  }
  return true;
}

}  // namespace

const Rule* Spec::find_rule(std::string_view name) const {
  return find_named(rules, name);
}
const Pattern* Spec::find_pattern(std::string_view name) const {
  return find_named(patterns, name);
}
const MappingDecl* Spec::find_mapping(std::string_view name) const {
  return find_named(mappings, name);
}
const ObjectiveDecl* Spec::find_objective(std::string_view name) const {
  return find_named(objectives, name);
}

bool same_spec(const Spec& a, const Spec& b) {
  bool ok =
      same_list(a.rules, b.rules,
                [](const Rule& x, const Rule& y) {
                  return x.name == y.name && same_pattern(x.lhs, y.lhs) &&
                         same_list(x.actions, y.actions, same_action);
                }) &&
      same_list(a.patterns, b.patterns, same_pattern) &&
      same_list(a.mappings, b.mappings,
                [](const MappingDecl& x, const MappingDecl& y) {
                  return x.name == y.name && x.rule == y.rule;
                }) &&
      same_list(a.constraints, b.constraints,
                [](const ConstraintDecl& x, const ConstraintDecl& y) {
                  return same_context(x.context, y.context) &&
                         same_expr(x.body, y.body);
                }) &&
      same_list(a.objectives, b.objectives,
                [](const ObjectiveDecl& x, const ObjectiveDecl& y) {
                  return x.name == y.name && same_context(x.context, y.context) &&
                         same_expr(x.body, y.body);
                });
  if (!ok || a.global_objective.has_value() != b.global_objective.has_value()) {
    return false;
  }
  return !a.global_objective ||
         (a.global_objective->sense == b.global_objective->sense &&
          same_expr(a.global_objective->expr, b.global_objective->expr));
}

}  // namespace gips
