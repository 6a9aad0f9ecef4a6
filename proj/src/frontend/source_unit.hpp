#pragma once

#include <string>
#include <string_view>

namespace testrec::frontend {

enum class UnitKind { Method, Test };

inline std::string_view to_string(UnitKind kind) {
  return kind == UnitKind::Method ? "method" : "test";
}

struct SourceUnit {
  std::string id;
  UnitKind kind = UnitKind::Method;
  std::string text;
};

}  // namespace testrec::frontend
