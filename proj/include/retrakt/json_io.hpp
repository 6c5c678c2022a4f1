#ifndef RETRAKT_JSON_IO_HPP
#define RETRAKT_JSON_IO_HPP

#include <json.hpp>

#include "retrakt/invert.hpp"
#include "retrakt/retract.hpp"
#include "retrakt/term.hpp"
#include "retrakt/types.hpp"
#include "retrakt/typing.hpp"

namespace retrakt {

// Field order is part of the output contract, hence ordered_json throughout.
using Json = nlohmann::ordered_json;

Json path_to_json(const Path& p);
Json hnf_to_json(const Hnf& h);
Json xi_to_json(const XiDerivation& d);

Json type_to_json(const StrictPtr& t);
Json type_to_json(const Intersection& t);
Json type_to_json(const StdPtr& t);

Json judgment_to_json(const Judgment& j);

/// {status, left, right, decomposition, trace_steps}
Json retract_result_to_json(const RetractResult& r);

Json verify_report_to_json(const VerifyReport& r);

}  // namespace retrakt

#endif
