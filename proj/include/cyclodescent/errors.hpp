#pragma once

#include <stdexcept>
#include <string>

namespace cyclodescent {

/// Base class for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

struct division_by_zero : error {
    division_by_zero() : error("division by zero") {}
};
struct conductor_mismatch : error {
    explicit conductor_mismatch(const std::string& w) : error(w) {}
};
struct not_a_subgroup : error {
    explicit not_a_subgroup(const std::string& w) : error(w) {}
};
struct not_a_subfield : error {
    explicit not_a_subfield(const std::string& w) : error(w) {}
};
struct not_quadratic : error {
    explicit not_quadratic(const std::string& w) : error(w) {}
};
struct invalid_place : error {
    explicit invalid_place(const std::string& w) : error(w) {}
};
struct shape_mismatch : error {
    explicit shape_mismatch(const std::string& w) : error(w) {}
};
struct singular_matrix : error {
    singular_matrix() : error("matrix is singular") {}
};
struct closure_bound_exceeded : error {
    explicit closure_bound_exceeded(const std::string& w) : error(w) {}
};
struct group_mismatch : error {
    group_mismatch() : error("operands belong to different groups") {}
};
struct not_irreducible : error {
    explicit not_irreducible(const std::string& w) : error(w) {}
};
struct lift_failure : error {
    explicit lift_failure(const std::string& w) : error(w) {}
};
struct validation_error : error {
    explicit validation_error(const std::string& w) : error(w) {}
};
struct not_absolutely_irreducible : error {
    explicit not_absolutely_irreducible(const std::string& w) : error(w) {}
};
struct no_intertwiner : error {
    explicit no_intertwiner(const std::string& w) : error(w) {}
};
struct non_scalar_defect : error {
    explicit non_scalar_defect(const std::string& w) : error(w) {}
};
struct not_cyclic : error {
    explicit not_cyclic(const std::string& w) : error(w) {}
};
struct cocycle_not_split : error {
    explicit cocycle_not_split(const std::string& w) : error(w) {}
};
struct fixed_space_dimension_mismatch : error {
    explicit fixed_space_dimension_mismatch(const std::string& w) : error(w) {}
};
struct not_real_embeddable : error {
    explicit not_real_embeddable(const std::string& w) : error(w) {}
};
struct undecidable : error {
    explicit undecidable(const std::string& w) : error(w) {}
};
struct precondition_failed : error {
    explicit precondition_failed(const std::string& w) : error(w) {}
};

} // namespace cyclodescent
