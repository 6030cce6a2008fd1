#ifndef SHAPECALC_ERRORS_HPP
#define SHAPECALC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace shapecalc {

enum class errc {
  duplicate_label,
  unknown_label,
  cycle_detected,
  codomain_mismatch,
  domain_mismatch,
  not_monotone,
  no_initial_object,
  empty_fiber_over_initial,
  missing_joins,
  joins_undefined,
  not_full,
  not_reduced,
  not_cubical,
  not_shape,
  not_surjective,
  inane_shape,
  hypothesis_violated,
  square_not_commuting,
  initial_fiber_violation,
  size_limit,
  inconsistent_class,
  image_order_collapse,
  invalid_document,
};

const char* errc_name(errc c);

/// Exception carrying a structured error code alongside the message.
class error : public std::runtime_error {
public:
  error(errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw error(code, msg); }

}  // namespace shapecalc

#endif
