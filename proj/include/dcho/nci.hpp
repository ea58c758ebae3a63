#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace dcho {

/// Base-station tier carried in the top two bits of a 22-bit gNB ID.
enum class GnbType : std::uint8_t {
  Macro = 0b00,
  SmallSub6 = 0b01,
  MmWave = 0b10,
  Reserved = 0b11,
};

inline constexpr int kNciBits = 36;
inline constexpr int kPlmnBits = 24;
inline constexpr int kTypeBits = 2;
inline constexpr int kDefaultGnbIdBits = 22;
inline constexpr int kMinGnbIdBits = 22;
inline constexpr int kMaxGnbIdBits = 32;
inline constexpr int kTypedGnbIdBits = kDefaultGnbIdBits - kTypeBits;   // 20
inline constexpr int kTypedCellIdBits = kNciBits - kDefaultGnbIdBits;   // 14

inline constexpr std::uint64_t kNciLimit = std::uint64_t{1} << kNciBits;
inline constexpr std::uint32_t kPlmnLimit = std::uint32_t{1} << kPlmnBits;
inline constexpr std::uint32_t kTypedGnbIdLimit = std::uint32_t{1} << kTypedGnbIdBits;
inline constexpr std::uint32_t kTypedCellIdLimit = std::uint32_t{1} << kTypedCellIdBits;

constexpr std::uint8_t type_code(GnbType t) noexcept {
  return static_cast<std::uint8_t>(t);
}

/// Total over 0..3; higher bits of `code` are ignored.
constexpr GnbType gnb_type_from_code(std::uint8_t code) noexcept {
  return static_cast<GnbType>(code & 0b11);
}

std::string_view to_string(GnbType t) noexcept;

/// NR Cell Global Identity. The PLMN is an opaque 24-bit container.
struct Ncgi {
  std::uint32_t plmn = 0;
  std::uint64_t nci = 0;
  int gnb_id_bits = kDefaultGnbIdBits;

  friend bool operator==(const Ncgi&, const Ncgi&) = default;
};

struct DecodedNci {
  GnbType gnb_type = GnbType::Reserved;
  std::uint32_t gnb_id = 0;
  std::uint32_t cell_id = 0;

  friend bool operator==(const DecodedNci&, const DecodedNci&) = default;
};

/// Packs type | gnb_id | cell_id into the 36-bit NCI using the 22-bit gNB ID
/// layout: bits [35:34] type, [33:14] gnb_id, [13:0] cell_id.
/// Throws RangeError when gnb_id >= 2^20 or cell_id >= 2^14.
std::uint64_t encode_nci(GnbType type, std::uint32_t gnb_id, std::uint32_t cell_id);

/// Splits `raw` into gNB ID (top `gnb_id_bits`) and cell ID fields. The type
/// subfield only exists for the 22-bit layout; any other width reports
/// GnbType::Reserved and the full gNB ID field in `gnb_id`.
/// Throws RangeError when raw >= 2^36 or gnb_id_bits is outside [22, 32].
DecodedNci decode_nci(std::uint64_t raw, int gnb_id_bits = kDefaultGnbIdBits);

/// Type code from bits [35:34]. Bits above 35 are ignored.
constexpr GnbType gnb_type_of(std::uint64_t raw) noexcept {
  return gnb_type_from_code(static_cast<std::uint8_t>((raw >> (kNciBits - kTypeBits)) & 0b11));
}

/// Builds a validated NCGI with the 22-bit typed layout.
Ncgi make_ncgi(std::uint32_t plmn, GnbType type, std::uint32_t gnb_id, std::uint32_t cell_id);

/// Canonical text: `PLMN:xxxxxx/TYPE:tt/GNB:d/CELL:d`, PLMN in upper-case hex.
/// Only defined for the 22-bit layout; other widths throw DomainError.
std::string format_ncgi(const Ncgi& ncgi);

/// Inverse of format_ncgi. Hex digits may be either case. Throws ParseError
/// carrying the byte offset of the first offending character.
Ncgi parse_ncgi(std::string_view text);

}  // namespace dcho
