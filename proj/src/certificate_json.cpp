#include "mhad/certificate_json.hpp"

namespace mhad {

using nlohmann::json;

namespace {

std::string builder_name(CanonicalKind kind) { return to_string(kind); }

CanonicalKind builder_from_name(const std::string& name) {
  for (auto kind : {CanonicalKind::AllOnes, CanonicalKind::JMinusTwoI, CanonicalKind::F2, CanonicalKind::F1,
                    CanonicalKind::H12}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error(ErrorCode::Parse, "unknown base builder '" + name + "'");
}

std::string obstruction_kind_name(ObstructionKind kind) {
  switch (kind) {
    case ObstructionKind::QuadraticNonResidue: return "quadratic_non_residue";
    case ObstructionKind::CountingBound: return "counting_bound";
    case ObstructionKind::EvenModulusParity: return "even_modulus_parity";
    case ObstructionKind::DoublyEvenParity: return "doubly_even_parity";
  }
  return "?";
}

ObstructionKind obstruction_kind_from_name(const std::string& name) {
  for (auto kind : {ObstructionKind::QuadraticNonResidue, ObstructionKind::CountingBound,
                    ObstructionKind::EvenModulusParity, ObstructionKind::DoublyEvenParity}) {
    if (obstruction_kind_name(kind) == name) return kind;
  }
  throw Error(ErrorCode::Parse, "unknown obstruction kind '" + name + "'");
}

json source_to_json(const DesignSource& source) {
  if (auto* c = std::get_if<DesignSource::Catalog>(&source.source)) return {{"kind", "catalog"}, {"name", to_string(c->name)}};
  if (auto* c = std::get_if<DesignSource::CoreOf>(&source.source)) return {{"kind", "core_of"}, {"recipe", recipe_to_json(*c->recipe)}};
  if (auto* c = std::get_if<DesignSource::Complement>(&source.source)) return {{"kind", "complement"}, {"of", source_to_json(*c->of)}};
  return {{"kind", "example_block_26"}};
}

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw Error(ErrorCode::Parse, std::string("missing field '") + key + "'");
  return doc.at(key);
}

std::int64_t int_field(const json& doc, const char* key) {
  const auto& value = field(doc, key);
  if (!value.is_number_integer()) throw Error(ErrorCode::Parse, std::string("field '") + key + "' must be an integer");
  return value.get<std::int64_t>();
}

std::string string_field(const json& doc, const char* key) {
  const auto& value = field(doc, key);
  if (!value.is_string()) throw Error(ErrorCode::Parse, std::string("field '") + key + "' must be a string");
  return value.get<std::string>();
}

RecipePtr recipe_from_json(const json& doc);

DesignSourcePtr source_from_json(const json& doc) {
  const auto kind = string_field(doc, "kind");
  if (kind == "catalog") {
    const auto name = catalog_name_from_string(string_field(doc, "name"));
    if (!name) throw Error(ErrorCode::Parse, "unknown catalog design");
    return make_catalog_source(*name);
  }
  if (kind == "core_of") return make_core_source(recipe_from_json(field(doc, "recipe")));
  if (kind == "complement") return make_complement_source(source_from_json(field(doc, "of")));
  if (kind == "example_block_26") return make_example_block_source();
  throw Error(ErrorCode::Parse, "unknown design source kind '" + kind + "'");
}

RecipePtr recipe_from_json(const json& doc) {
  const auto kind = string_field(doc, "kind");
  const auto m = int_field(doc, "m");
  RecipePtr recipe;
  if (kind == "base") {
    recipe = make_base(builder_from_name(string_field(doc, "builder")), int_field(doc, "n"), m);
  } else if (kind == "kron") {
    recipe = make_kron(recipe_from_json(field(doc, "left")), recipe_from_json(field(doc, "right")), m);
  } else if (kind == "two_design") {
    recipe = make_two_design(source_from_json(field(doc, "design")), m);
  } else if (kind == "direct_sum") {
    recipe = make_direct_sum(source_from_json(field(doc, "first")), source_from_json(field(doc, "second")), m);
  } else {
    throw Error(ErrorCode::Parse, "unknown recipe kind '" + kind + "'");
  }
  if (recipe->order != int_field(doc, "n")) throw Error(ErrorCode::Parse, "recipe order does not match its children");
  return recipe;
}

}  // namespace

json recipe_to_json(const Recipe& recipe) {
  json out = {{"n", recipe.order}, {"m", recipe.modulus}};
  if (auto* b = std::get_if<Recipe::Base>(&recipe.node)) {
    out["kind"] = "base";
    out["builder"] = builder_name(b->kind);
  } else if (auto* k = std::get_if<Recipe::Kron>(&recipe.node)) {
    out["kind"] = "kron";
    out["left"] = recipe_to_json(*k->left);
    out["right"] = recipe_to_json(*k->right);
  } else if (auto* t = std::get_if<Recipe::TwoDesign>(&recipe.node)) {
    out["kind"] = "two_design";
    out["design"] = source_to_json(*t->design);
  } else if (auto* d = std::get_if<Recipe::DirectSum>(&recipe.node)) {
    out["kind"] = "direct_sum";
    out["first"] = source_to_json(*d->first);
    out["second"] = source_to_json(*d->second);
  }
  return out;
}

json obstruction_to_json(const Obstruction& o) {
  json out = {{"kind", obstruction_kind_name(o.kind)}, {"r", o.r}, {"bound", o.bound}, {"residue", o.residue}};
  if (o.kind == ObstructionKind::QuadraticNonResidue) out["squares"] = o.squares;
  return out;
}

json certificate_to_json(const Certificate& certificate) {
  json out = {{"n", certificate.n}, {"m", certificate.m}};
  if (certificate.exists()) {
    out["outcome"] = "exists";
    out["recipe"] = recipe_to_json(certificate.recipe());
  } else {
    out["outcome"] = "not_exists";
    out["obstruction"] = obstruction_to_json(certificate.obstruction());
  }
  return out;
}

Certificate certificate_from_json(const json& doc) {
  Certificate c;
  c.n = int_field(doc, "n");
  c.m = int_field(doc, "m");
  const auto outcome = string_field(doc, "outcome");
  if (outcome == "exists") {
    c.outcome = recipe_from_json(field(doc, "recipe"));
  } else if (outcome == "not_exists") {
    const auto& o = field(doc, "obstruction");
    Obstruction ob;
    ob.kind = obstruction_kind_from_name(string_field(o, "kind"));
    ob.n = c.n;
    ob.m = c.m;
    ob.r = int_field(o, "r");
    ob.bound = int_field(o, "bound");
    ob.residue = int_field(o, "residue");
    if (ob.kind == ObstructionKind::QuadraticNonResidue) {
      const auto& squares = field(o, "squares");
      if (!squares.is_array()) throw Error(ErrorCode::Parse, "field 'squares' must be an array");
      for (const auto& s : squares) {
        if (!s.is_number_integer()) throw Error(ErrorCode::Parse, "squares must be integers");
        ob.squares.push_back(s.get<std::int64_t>());
      }
    }
    c.outcome = std::move(ob);
  } else {
    throw Error(ErrorCode::Parse, "outcome must be 'exists' or 'not_exists'");
  }
  return c;
}

std::string serialize_certificate(const Certificate& certificate) { return certificate_to_json(certificate).dump(2) + "\n"; }

}  // namespace mhad
