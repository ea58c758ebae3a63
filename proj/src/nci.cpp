#include "dcho/nci.hpp"

#include <cstdio>

#include "dcho/errors.hpp"

namespace dcho {

std::string_view to_string(GnbType t) noexcept {
  switch (t) {
    case GnbType::Macro:
      return "macro";
    case GnbType::SmallSub6:
      return "small";
    case GnbType::MmWave:
      return "mmwave";
    case GnbType::Reserved:
      break;
  }
  return "reserved";
}

std::uint64_t encode_nci(GnbType type, std::uint32_t gnb_id, std::uint32_t cell_id) {
  if (gnb_id >= kTypedGnbIdLimit) {
    throw RangeError("gnb_id " + std::to_string(gnb_id) + " exceeds 20 bits");
  }
  if (cell_id >= kTypedCellIdLimit) {
    throw RangeError("cell_id " + std::to_string(cell_id) + " exceeds 14 bits");
  }
  return (std::uint64_t{type_code(type)} << (kNciBits - kTypeBits)) |
         (std::uint64_t{gnb_id} << kTypedCellIdBits) | std::uint64_t{cell_id};
}

DecodedNci decode_nci(std::uint64_t raw, int gnb_id_bits) {
  if (raw >= kNciLimit) {
    throw RangeError("NCI value exceeds 36 bits");
  }
  if (gnb_id_bits < kMinGnbIdBits || gnb_id_bits > kMaxGnbIdBits) {
    throw RangeError("gNB ID width " + std::to_string(gnb_id_bits) + " outside [22, 32]");
  }
  const int cell_bits = kNciBits - gnb_id_bits;
  const std::uint64_t cell_mask = (std::uint64_t{1} << cell_bits) - 1;
  const auto gnb_field = raw >> cell_bits;

  DecodedNci out;
  out.cell_id = static_cast<std::uint32_t>(raw & cell_mask);
  if (gnb_id_bits == kDefaultGnbIdBits) {
    out.gnb_type = gnb_type_of(raw);
    out.gnb_id = static_cast<std::uint32_t>(gnb_field & (kTypedGnbIdLimit - 1));
  } else {
    out.gnb_type = GnbType::Reserved;
    out.gnb_id = static_cast<std::uint32_t>(gnb_field);
  }
  return out;
}

Ncgi make_ncgi(std::uint32_t plmn, GnbType type, std::uint32_t gnb_id, std::uint32_t cell_id) {
  if (plmn >= kPlmnLimit) {
    throw RangeError("PLMN exceeds 24 bits");
  }
  return Ncgi{plmn, encode_nci(type, gnb_id, cell_id), kDefaultGnbIdBits};
}

std::string format_ncgi(const Ncgi& ncgi) {
  if (ncgi.gnb_id_bits != kDefaultGnbIdBits) {
    throw DomainError("textual NCGI form requires the 22-bit gNB ID layout");
  }
  if (ncgi.plmn >= kPlmnLimit) {
    throw RangeError("PLMN exceeds 24 bits");
  }
  const auto d = decode_nci(ncgi.nci, kDefaultGnbIdBits);
  const auto code = type_code(d.gnb_type);
  char buf[64];
  std::snprintf(buf, sizeof buf, "PLMN:%06X/TYPE:%c%c/GNB:%u/CELL:%u",
                static_cast<unsigned>(ncgi.plmn), (code & 0b10) ? '1' : '0',
                (code & 0b01) ? '1' : '0', static_cast<unsigned>(d.gnb_id),
                static_cast<unsigned>(d.cell_id));
  return buf;
}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void expect(std::string_view literal) {
    for (char c : literal) {
      if (pos_ >= text_.size() || text_[pos_] != c) {
        fail("expected '" + std::string(literal) + "'");
      }
      ++pos_;
    }
  }

  std::uint32_t hex_exact(int digits) {
    std::uint32_t v = 0;
    for (int i = 0; i < digits; ++i) {
      if (pos_ >= text_.size()) fail("truncated hex field");
      const char c = text_[pos_];
      int nibble;
      if (c >= '0' && c <= '9') {
        nibble = c - '0';
      } else if (c >= 'A' && c <= 'F') {
        nibble = c - 'A' + 10;
      } else if (c >= 'a' && c <= 'f') {
        nibble = c - 'a' + 10;
      } else {
        fail("expected hex digit");
      }
      v = (v << 4) | static_cast<std::uint32_t>(nibble);
      ++pos_;
    }
    return v;
  }

  std::uint8_t binary_exact(int digits) {
    std::uint8_t v = 0;
    for (int i = 0; i < digits; ++i) {
      if (pos_ >= text_.size() || (text_[pos_] != '0' && text_[pos_] != '1')) {
        fail("expected binary digit");
      }
      v = static_cast<std::uint8_t>((v << 1) | (text_[pos_] - '0'));
      ++pos_;
    }
    return v;
  }

  std::uint32_t decimal_below(std::uint32_t limit, const char* field) {
    const auto start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v >= limit) {
        fail(std::string(field) + " out of range", start);
      }
      ++pos_;
    }
    if (pos_ == start) fail(std::string("expected decimal ") + field);
    return static_cast<std::uint32_t>(v);
  }

  void expect_end() {
    if (pos_ != text_.size()) fail("trailing characters");
  }

  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }
  [[noreturn]] static void fail(const std::string& msg, std::size_t at) {
    throw ParseError("NCGI parse error at byte " + std::to_string(at) + ": " + msg, at);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Ncgi parse_ncgi(std::string_view text) {
  Cursor in(text);
  in.expect("PLMN:");
  const auto plmn = in.hex_exact(6);
  in.expect("/TYPE:");
  const auto code = in.binary_exact(2);
  in.expect("/GNB:");
  const auto gnb = in.decimal_below(kTypedGnbIdLimit, "GNB");
  in.expect("/CELL:");
  const auto cell = in.decimal_below(kTypedCellIdLimit, "CELL");
  in.expect_end();
  return make_ncgi(plmn, gnb_type_from_code(code), gnb, cell);
}

}  // namespace dcho
