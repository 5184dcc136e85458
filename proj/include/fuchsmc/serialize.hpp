#pragma once

#include <json.hpp>

#include "fuchsmc/elliptic.hpp"
#include "fuchsmc/fuchsian.hpp"
#include "fuchsmc/transport.hpp"

namespace fuchsmc {

using json = nlohmann::ordered_json;

// complex numbers as [re, im]; matrices row-major
json to_json(cplx z);
json to_json(const Matrix2& m);
json to_json(const PeriodLattice& L);
json to_json(const FuchsianSystem& s);
json to_json(const FuchsianSystemQ& s);  // entries as rational strings
json to_json(const MonodromyResult& m);

cplx parse_complex(const std::string& s);  // "a", "a+bi", "a,b"

// result object carrying the pass/fail contract of the CLI
json result_object(json value, double error_estimate, double tolerance, bool pass);

}  // namespace fuchsmc
