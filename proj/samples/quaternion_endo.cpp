// Walk the quaternion group's 2-dimensional representation through the full
// pipeline: self-conjugacy, cocycle, obstruction, endomorphism algebra, and
// minimal fields of definition.

#include <iostream>

#include <cyclodescent/cyclodescent.hpp>

using namespace cyclodescent;

int main() {
    Representation rho = catalog::rep("q8_2dim");
    std::cout << "Q8, 2-dimensional representation over "
              << rho.coefficient_field().name() << "\n";

    RationalityData rd = rationality_data(rho);
    std::cout << "field of rationality: " << rd.field_of_rationality.name() << "\n";

    DescentDecision dec = descent_exists(rho, rationals_in(rho.conductor()));
    std::cout << "norm class over Q: " << dec.norm_class_rational->str() << "\n";
    std::cout << "rational form exists: " << (dec.exists() ? "yes" : "no") << "\n";
    for (const auto& [v, s] : dec.invariants)
        std::cout << "  invariant at " << v.str() << ": " << s << "\n";

    Representation res = restriction_of_scalars(rho, rationals_in(rho.conductor()));
    EndAlgebra e = end_algebra(res);
    std::cout << "End of the restriction to Q: " << e.classification_str() << "\n";

    MinFieldReport mf = minimal_fields_of_definition(catalog::rep("q8_2dim_z8"));
    std::cout << "minimal fields of definition inside Q(zeta_8):";
    for (const auto& f : mf.minimal) std::cout << " " << f.name();
    std::cout << "\n";
    return 0;
}
