#include "flatlat/error.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

#include "flatlat/size_guard.hpp"

namespace flatlat {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::NoLeastElement: return "NoLeastElement";
    case ErrorCode::JoinMissing: return "JoinMissing";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::UnknownBuiltin: return "UnknownBuiltin";
    case ErrorCode::InvalidTable: return "InvalidTable";
    case ErrorCode::SizeGuardExceeded: return "SizeGuardExceeded";
    case ErrorCode::NotAHom: return "NotAHom";
    case ErrorCode::NotBijective: return "NotBijective";
    case ErrorCode::InternalDisagreement: return "InternalDisagreement";
    case ErrorCode::IsDistributive: return "IsDistributive";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

SizeGuard SizeGuard::from_environment() {
  SizeGuard guard;
  if (const char* env = std::getenv("FLATLAT_SIZE_GUARD")) {
    std::size_t value = 0;
    const char* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec == std::errc{} && ptr == end && value > 0) guard.max_size = value;
  }
  return guard;
}

void check_guard(std::size_t value, std::size_t limit, const std::string& what) {
  if (value > limit) {
    throw Error(ErrorCode::SizeGuardExceeded,
                what + " is " + std::to_string(value) + ", limit " + std::to_string(limit));
  }
}

}  // namespace flatlat
