#ifndef HFOX_IO_HPP
#define HFOX_IO_HPP

#include "hfox/params.hpp"
#include "hfox/types.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace hfox {

using Json = nlohmann::json;

/// {"m":..,"n":..,"p":..,"q":..,"a":[[re,im],..],"alpha":[..],"b":..,"beta":[..]}
HFunctionParams params_from_json(const Json& j);
Json params_to_json(const HFunctionParams& params);
HFunctionParams load_params(const std::string& path);

/// JSON value for a double; +-inf become the strings "inf"/"-inf".
Json json_number(double x);

Json derived_constants_to_json(const DerivedConstants& c);
Json regime_report_to_json(const RegimeReport& rep);

/// CSV columns t,re,im with '#' header comments (weight_nu plus any extra
/// comment lines passed in).
void write_grid_csv(const std::string& path, const GridFunction& f,
                    const std::vector<std::string>& comments = {});
GridFunction read_grid_csv(const std::string& path);

/// CSV columns tau,re,im with sigma recorded in a header comment.
void write_line_csv(const std::string& path, const MellinLineFunction& F,
                    const std::vector<std::string>& comments = {});
MellinLineFunction read_line_csv(const std::string& path);

/// Shortest-roundtrip-safe fixed formatting used by all CSV writers.
std::string format_double(double x);

} // namespace hfox

#endif
