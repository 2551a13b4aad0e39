#pragma once

// Turns the declarative construction tree of a scenario into library objects.
// Named objects are built on first use and memoized; inline objects are built
// in place. Every malformed entry raises LabError(Config).

#include <map>
#include <set>
#include <string>
#include <vector>

#include "slicelab/daugavet.hpp"
#include "slicelab/scenario.hpp"

namespace slicelab::detail {

[[noreturn]] void config_error(const std::string& what);

const Json& require(const Json& j, const char* key);
double number(const Json& j, const char* key, double fallback);
std::size_t count(const Json& j, const char* key, std::size_t fallback);
std::string text(const Json& j, const char* key, const std::string& fallback);
Scalar parse_scalar(const Json& j);
std::vector<double> parse_doubles(const Json& j);

class Resolver {
public:
    Resolver(const Json& construction, SearchOptions search);

    Space space(const Json& ref);
    Vector vector(const Json& ref);
    std::vector<Vector> vectors(const Json& ref);
    DualFunctional dual(const Json& ref);
    std::vector<DualFunctional> duals(const Json& ref);
    BoundedMap map(const Json& ref);
    ScalarMap functional(const Json& ref);
    std::optional<Restriction> restriction(const Json& ref);
    UnitScalarGrid grid(const Json& ref);
    SliceFamily family(const Json& ref);
    LocalContext context(const Json& ref);
    CertificateProblem problem(const Json& ref);

    [[nodiscard]] const SearchOptions& search() const noexcept { return search_; }

private:
    // Named lookup with cycle detection; `build` receives the stored definition.
    template <class T, class Build>
    T named(std::map<std::string, T>& cache, const char* section, const std::string& name, Build build);

    Space build_space(const Json& def);
    Vector build_vector(const Json& def);
    DualFunctional build_dual(const Json& def);
    BoundedMap build_map(const Json& def);
    ScalarMap build_functional(const Json& def);

    const Json& construction_;
    SearchOptions search_;
    std::set<std::string> in_progress_;
    std::map<std::string, Space> spaces_;
    std::map<std::string, Vector> vectors_;
    std::map<std::string, DualFunctional> duals_;
    std::map<std::string, BoundedMap> maps_;
    std::map<std::string, ScalarMap> functionals_;
};

}  // namespace slicelab::detail
