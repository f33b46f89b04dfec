#pragma once

#include "courant/constructions.hpp"

#include <optional>
#include <stdexcept>

namespace courant {

// Distinct diagnostic classes for model files: malformed schema, a name that
// does not resolve to a declared generator/section/coordinate, and a pairing
// whose inverse witness fails.
enum class DiagnosticKind { Schema, UnresolvedReference, PairingWitness };

struct ModelDiagnostic : std::runtime_error {
    DiagnosticKind kind;
    int line;
    int column;

    ModelDiagnostic(DiagnosticKind k, const std::string& origin, int line_,
                    int column_, const std::string& msg);
};

// Optional lift block: a target dg ring, generator images of the base ring,
// and a lifted anchor over the target coordinates (see ScalarsMap).
struct LiftBlock {
    Cdga target;
    std::map<size_t, Elem> images;
    std::vector<VectorField> anchor;
};

// In-memory form of a model file: the Courant datum, the contact orientation
// and the optional construction blocks.
struct ModelFile {
    std::string name;
    CourantDatum datum;
    Orientation orient;
    std::optional<IsotropicSubmodule> submodule;
    std::optional<LiftBlock> lift;

    ScalarsMap scalars_map() const; // assembled from the lift block; throws if absent
};

// Polynomial literal in the canonical rendering: `3/2*x^2*dt` with `^`
// powers, `*` products, rational or Gaussian coefficients and declared
// generator names. Inverse of Elem::to_string.
Elem parse_poly(const AlgebraPtr& alg, const std::string& text);

// Parses and fully validates a model file; throws ModelDiagnostic with the
// offending line/column on failure.
ModelFile parse_model(const std::string& path);
ModelFile parse_model_text(const std::string& text,
                           const std::string& origin = "<memory>");

// Deterministic canonical rendering; parse_model_text(render_model(m)) equals
// m (blocks in fixed order, entries in canonical generator/section order).
std::string render_model(const ModelFile& m);

// Structural equality of the in-memory form (names, grades, polynomials,
// blocks); a missing differential/dmat equals an all-zero one.
bool models_equal(const ModelFile& a, const ModelFile& b);

} // namespace courant
