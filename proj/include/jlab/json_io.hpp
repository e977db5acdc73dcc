#ifndef JLAB_JSON_IO_HPP_
#define JLAB_JSON_IO_HPP_

#include <string>

#include <json.hpp>

#include "jlab/algebra.hpp"
#include "jlab/chains.hpp"
#include "jlab/maltsev.hpp"
#include "jlab/verifier.hpp"

namespace jlab {

using Json = nlohmann::ordered_json;

Json algebra_to_json(const FiniteAlgebra& alg);
FiniteAlgebra algebra_from_json(const Json& j);
FiniteAlgebra load_algebra_file(const std::string& path);

Json system_to_json(const JonssonSystem& system);
JonssonSystem system_from_json(const Json& j);
JonssonSystem load_system_file(const std::string& path);

Json chain_to_json(const WitnessChain& chain, const ValidationReport& validation);
Json nln_to_json(const NlnChain& chain);
Json system_report_to_json(const SystemReport& report);

Json spectrum_to_json(const Spectrum& s);
std::string spectrum_to_csv(const Spectrum& s);

}  // namespace jlab

#endif  // JLAB_JSON_IO_HPP_
