#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "fabt/term.hpp"
#include "fabt/type.hpp"

namespace fabt {

/// Slots of UVal_{n+1}, in layout order.
enum class UValTag : std::uint8_t { Unk, Unit, Bool, Prod, Sum, Arrow };

std::string_view to_string(UValTag tag);
std::optional<UValTag> parse_uval_tag(std::string_view text);

/// UVal_0 = Unit; UVal_{n+1} = Unit + (Unit + (Bool + (U*U + ((U+U) + (U -> U))))) with U = UVal_n.
Type uval_type(unsigned n);
/// Type of the payload stored in `tag`'s slot of UVal_{n+1}.
Type uval_slot_type(UValTag tag, unsigned n);

/// Injection into `tag`'s slot of UVal_{n+1}. The payload is ignored for Unk.
SrcTerm in_uval(UValTag tag, unsigned n, const SrcTerm& payload = {});
SrcTerm unk_uval(unsigned n);
/// fix_{Unit->τ} (λx:Unit->τ. x) unit, which diverges at type τ.
SrcTerm omega(Type t);
/// UVal_{n+1} -> slot type; the Arrow variant takes the argument as well,
/// UVal_{n+1} -> UVal_n -> UVal_n. Any other slot diverges. Tag must not be Unk.
SrcTerm case_uval(UValTag tag, unsigned n);
Type case_uval_type(UValTag tag, unsigned n);

/// UVal_{n+d} -> UVal_n.
SrcTerm downgrade_term(unsigned n, unsigned d);
/// UVal_n -> UVal_{n+d}.
SrcTerm upgrade_term(unsigned n, unsigned d);

/// Source term of type UVal_n imitating t; free variables keep their names
/// and are assumed to have type UVal_n. Holes map to holes.
SrcTerm emulate(unsigned n, const TgtTerm& t);
SrcCtx emulate_ctx(unsigned n, const TgtCtx& c);

/// τ -> UVal_n.
SrcTerm inject_term(Type t, unsigned n);
/// UVal_n -> τ.
SrcTerm extract_term(Type t, unsigned n);

/// Source context that imitates the closed target context c for terms of
/// type τ: emulate_ctx(n, c) with its hole fed through inject_{τ;n}.
/// Throws std::invalid_argument for n = 0 and ScopeError for open c.
SrcCtx backtranslate(const TgtCtx& c, Type t, unsigned n);

}  // namespace fabt
