// Three-valued outcome for support queries. Toy-universe queries are exact
// and never Unknown; arithmetic queries may be Verified-up-to-a-bound or
// degrade to Unknown, with the details field carrying bounds and evidence.
#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace bes {

enum class SupportStatus { Verified, Refuted, Unknown };

const char* to_string(SupportStatus s);

struct SupportVerdict {
  SupportStatus status = SupportStatus::Unknown;
  std::string note;
  nlohmann::json details = nlohmann::json::object();

  static SupportVerdict verified(std::string note, nlohmann::json details = {});
  static SupportVerdict refuted(std::string note, nlohmann::json details = {});
  static SupportVerdict unknown(std::string note, nlohmann::json details = {});
};

}  // namespace bes
