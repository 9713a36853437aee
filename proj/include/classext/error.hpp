#pragma once

#include <stdexcept>
#include <string>

namespace classext {

enum class Errc {
  invalid_discriminant,
  inconsistent_presentation,
  invalid_structure,
  unsupported_ring,
  element_not_in_ambient,
  parent_mismatch,
  zero_module,
  not_intermediate,
  size_bound_exceeded,
  unsupported_extension,
  not_invertible,
  maximal_ideal_list_invalid,
  no_retraction,
  unsupported_shape,
  discriminant_mismatch,
  enumeration_impossible,
  invalid_morphism,
  malformed_input,
};

inline const char* errc_name(Errc e) {
  switch (e) {
    case Errc::invalid_discriminant: return "invalid-discriminant";
    case Errc::inconsistent_presentation: return "inconsistent-presentation";
    case Errc::invalid_structure: return "invalid-structure";
    case Errc::unsupported_ring: return "unsupported-ring";
    case Errc::element_not_in_ambient: return "element-not-in-ambient";
    case Errc::parent_mismatch: return "parent-mismatch";
    case Errc::zero_module: return "zero-module";
    case Errc::not_intermediate: return "not-intermediate";
    case Errc::size_bound_exceeded: return "size-bound-exceeded";
    case Errc::unsupported_extension: return "unsupported-extension";
    case Errc::not_invertible: return "not-invertible";
    case Errc::maximal_ideal_list_invalid: return "maximal-ideal-list-invalid";
    case Errc::no_retraction: return "no-retraction";
    case Errc::unsupported_shape: return "unsupported-shape";
    case Errc::discriminant_mismatch: return "discriminant-mismatch";
    case Errc::enumeration_impossible: return "enumeration-impossible";
    case Errc::invalid_morphism: return "invalid-morphism";
    case Errc::malformed_input: return "malformed-input";
  }
  return "unknown";
}

/// Every failure in the library is reported through this exception; the
/// code is stable and is what the CLI prints.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace classext
