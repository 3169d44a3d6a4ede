#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace lpshift {

// Incremental SHA-256 (FIPS 180-4). Used for input checksums in manifests.
class Sha256 {
public:
    Sha256();
    void update(const void* data, std::size_t len);
    void update(std::string_view s) { update(s.data(), s.size()); }
    // Finalizes and returns lowercase hex. The object must not be reused.
    std::string hex_digest();

private:
    void process_block(const std::uint8_t* block);

    std::uint32_t state_[8];
    std::uint8_t buffer_[64];
    std::size_t buffer_len_ = 0;
    std::uint64_t total_bytes_ = 0;
};

std::string sha256_hex(std::string_view data);

}  // namespace lpshift
