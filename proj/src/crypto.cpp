// Copyright 2026 The Clio Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "clio/crypto.hpp"

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/kdf.h>

#include <algorithm>
#include <cstring>
#include <memory>

namespace clio {

Bytes sha256(ByteView data) {
  Bytes out(32);
  unsigned int n = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &n, EVP_sha256(), nullptr) != 1) {
    throw CryptoError("SHA-256 failed");
  }
  return out;
}

namespace {

Bytes concat(std::initializer_list<ByteView> parts) {
  Bytes out;
  for (ByteView p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

ByteView sv(std::string_view s) { return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()}; }

}  // namespace

// --- Rng -------------------------------------------------------------------

Rng::Rng(std::uint64_t seed) {
  Bytes s;
  append_u64be(s, seed);
  Bytes k = sha256(concat({sv("clio-rng"), s}));
  std::copy(k.begin(), k.end(), key_.begin());
}

Rng::Rng(ByteView seed) {
  Bytes k = sha256(concat({sv("clio-rng-bytes"), seed}));
  std::copy(k.begin(), k.end(), key_.begin());
}

void Rng::refill() {
  Bytes c;
  append_u64be(c, counter_++);
  Bytes b = sha256(concat({key_, c}));
  std::copy(b.begin(), b.end(), block_.begin());
  used_ = 0;
}

Bytes Rng::bytes(std::size_t n) {
  Bytes out;
  out.reserve(n);
  while (out.size() < n) {
    if (used_ == block_.size()) refill();
    const std::size_t take = std::min(n - out.size(), block_.size() - used_);
    out.insert(out.end(), block_.begin() + used_, block_.begin() + used_ + take);
    used_ += take;
  }
  return out;
}

std::uint64_t Rng::next_u64() {
  Bytes b = bytes(8);
  std::size_t pos = 0;
  return *read_u64be(b, pos);
}

std::uint64_t Rng::uniform(std::uint64_t bound) {
  if (bound == 0) throw Error("Rng::uniform with zero bound");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    std::uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

double Rng::unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

Rng Rng::fork(std::string_view label) const {
  return Rng(ByteView(concat({key_, sv("/fork/"), sv(label)})));
}

// --- OpenSSL helpers -------------------------------------------------------

namespace {

struct PkeyFree {
  void operator()(EVP_PKEY* p) const { EVP_PKEY_free(p); }
};
struct PkeyCtxFree {
  void operator()(EVP_PKEY_CTX* p) const { EVP_PKEY_CTX_free(p); }
};
struct MdCtxFree {
  void operator()(EVP_MD_CTX* p) const { EVP_MD_CTX_free(p); }
};
struct CipherCtxFree {
  void operator()(EVP_CIPHER_CTX* p) const { EVP_CIPHER_CTX_free(p); }
};
using Pkey = std::unique_ptr<EVP_PKEY, PkeyFree>;

constexpr std::size_t kSeed = 32;
constexpr std::size_t kPub = 32;
constexpr std::size_t kIv = 16;
constexpr std::size_t kTag = 32;

Pkey private_key(int type, ByteView seed) {
  Pkey k(EVP_PKEY_new_raw_private_key(type, nullptr, seed.data(), seed.size()));
  if (!k) throw CryptoError("malformed private key");
  return k;
}

Pkey public_key(int type, ByteView raw) {
  return Pkey(EVP_PKEY_new_raw_public_key(type, nullptr, raw.data(), raw.size()));
}

Bytes raw_public(const Pkey& k) {
  Bytes out(kPub);
  std::size_t n = out.size();
  if (EVP_PKEY_get_raw_public_key(k.get(), out.data(), &n) != 1 || n != kPub) {
    throw CryptoError("cannot export public key");
  }
  return out;
}

std::optional<Bytes> x25519(const Pkey& mine, const Pkey& theirs) {
  std::unique_ptr<EVP_PKEY_CTX, PkeyCtxFree> ctx(EVP_PKEY_CTX_new(mine.get(), nullptr));
  std::size_t n = 32;
  Bytes out(n);
  if (!ctx || EVP_PKEY_derive_init(ctx.get()) != 1 ||
      EVP_PKEY_derive_set_peer(ctx.get(), theirs.get()) != 1 ||
      EVP_PKEY_derive(ctx.get(), out.data(), &n) != 1 || n != 32) {
    return std::nullopt;
  }
  return out;
}

Bytes hkdf(ByteView ikm, ByteView salt, std::string_view info, std::size_t len) {
  std::unique_ptr<EVP_PKEY_CTX, PkeyCtxFree> ctx(EVP_PKEY_CTX_new_id(EVP_PKEY_HKDF, nullptr));
  Bytes out(len);
  if (!ctx || EVP_PKEY_derive_init(ctx.get()) != 1 ||
      EVP_PKEY_CTX_set_hkdf_md(ctx.get(), EVP_sha256()) != 1 ||
      EVP_PKEY_CTX_set1_hkdf_salt(ctx.get(), salt.data(), static_cast<int>(salt.size())) != 1 ||
      EVP_PKEY_CTX_set1_hkdf_key(ctx.get(), ikm.data(), static_cast<int>(ikm.size())) != 1 ||
      EVP_PKEY_CTX_add1_hkdf_info(ctx.get(), reinterpret_cast<const unsigned char*>(info.data()),
                                  static_cast<int>(info.size())) != 1 ||
      EVP_PKEY_derive(ctx.get(), out.data(), &len) != 1) {
    throw CryptoError("HKDF failed");
  }
  return out;
}

Bytes hmac_sha256(ByteView key, ByteView msg) {
  Bytes out(32);
  unsigned int n = 0;
  if (!HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), msg.data(), msg.size(),
            out.data(), &n)) {
    throw CryptoError("HMAC failed");
  }
  return out;
}

Bytes aes_ctr(ByteView key, ByteView iv, ByteView in) {
  std::unique_ptr<EVP_CIPHER_CTX, CipherCtxFree> ctx(EVP_CIPHER_CTX_new());
  Bytes out(in.size() + 16);
  int n = 0, m = 0;
  if (!ctx ||
      EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_ctr(), nullptr, key.data(), iv.data()) != 1 ||
      EVP_EncryptUpdate(ctx.get(), out.data(), &n, in.data(), static_cast<int>(in.size())) != 1 ||
      EVP_EncryptFinal_ex(ctx.get(), out.data() + n, &m) != 1) {
    throw CryptoError("AES-CTR failed");
  }
  out.resize(static_cast<std::size_t>(n + m));
  return out;
}

// Encryption keys: AES key || MAC key.
Bytes session_keys(ByteView shared, ByteView eph_pub, ByteView recipient_pub) {
  return hkdf(shared, concat({eph_pub, recipient_pub}), "clio/enc/v1", 64);
}

class RealProvider final : public CryptoProvider {
 public:
  std::string name() const override { return "real"; }

  KeyPair gen(Rng& rng) const override {
    Bytes seeds = rng.bytes(2 * kSeed);
    Bytes pub = raw_public(private_key(EVP_PKEY_X25519, ByteView(seeds).first(kSeed)));
    Bytes spub = raw_public(private_key(EVP_PKEY_ED25519, ByteView(seeds).subspan(kSeed)));
    pub.insert(pub.end(), spub.begin(), spub.end());
    return {std::move(pub), std::move(seeds)};
  }

  Bytes enc(ByteView pk, ByteView m, Rng& rng) const override {
    if (pk.size() != 2 * kPub) throw CryptoError("malformed public key");
    ByteView enc_pub = pk.first(kPub);
    Pkey theirs = public_key(EVP_PKEY_X25519, enc_pub);
    if (!theirs) throw CryptoError("malformed public key");
    Pkey eph = private_key(EVP_PKEY_X25519, rng.bytes(kSeed));
    Bytes eph_pub = raw_public(eph);
    auto shared = x25519(eph, theirs);
    if (!shared) throw CryptoError("key agreement failed");
    Bytes keys = session_keys(*shared, eph_pub, enc_pub);
    Bytes iv = rng.bytes(kIv);
    Bytes out = concat({eph_pub, iv, aes_ctr(ByteView(keys).first(32), iv, m)});
    Bytes tag = hmac_sha256(ByteView(keys).subspan(32), out);
    out.insert(out.end(), tag.begin(), tag.end());
    return out;
  }

  std::optional<Bytes> dec(ByteView sk, ByteView c) const override {
    if (sk.size() != 2 * kSeed || c.size() < kPub + kIv + kTag) return std::nullopt;
    Pkey mine = private_key(EVP_PKEY_X25519, sk.first(kSeed));
    Pkey eph = public_key(EVP_PKEY_X25519, c.first(kPub));
    if (!eph) return std::nullopt;
    auto shared = x25519(mine, eph);
    if (!shared) return std::nullopt;
    Bytes keys = session_keys(*shared, c.first(kPub), raw_public(mine));
    ByteView body = c.first(c.size() - kTag);
    Bytes tag = hmac_sha256(ByteView(keys).subspan(32), body);
    if (CRYPTO_memcmp(tag.data(), c.last(kTag).data(), kTag) != 0) return std::nullopt;
    return aes_ctr(ByteView(keys).first(32), c.subspan(kPub, kIv), body.subspan(kPub + kIv));
  }

  Bytes sign(ByteView sk, ByteView m, Rng&) const override {
    if (sk.size() != 2 * kSeed) throw CryptoError("malformed private key");
    Pkey key = private_key(EVP_PKEY_ED25519, sk.subspan(kSeed));
    std::unique_ptr<EVP_MD_CTX, MdCtxFree> ctx(EVP_MD_CTX_new());
    Bytes sig(64);
    std::size_t n = sig.size();
    if (!ctx || EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr, key.get()) != 1 ||
        EVP_DigestSign(ctx.get(), sig.data(), &n, m.data(), m.size()) != 1) {
      throw CryptoError("Ed25519 signing failed");
    }
    sig.resize(n);
    return sig;
  }

  bool verify(ByteView pk, ByteView m, ByteView sig) const override {
    if (pk.size() != 2 * kPub || sig.size() != 64) return false;
    Pkey key = public_key(EVP_PKEY_ED25519, pk.subspan(kPub));
    if (!key) return false;
    std::unique_ptr<EVP_MD_CTX, MdCtxFree> ctx(EVP_MD_CTX_new());
    return ctx && EVP_DigestVerifyInit(ctx.get(), nullptr, nullptr, nullptr, key.get()) == 1 &&
           EVP_DigestVerify(ctx.get(), sig.data(), sig.size(), m.data(), m.size()) == 1;
  }

  std::size_t ciphertext_length(std::size_t n) const override { return n + kPub + kIv + kTag; }
};

// --- testvec ---------------------------------------------------------------

class TestvecProvider final : public CryptoProvider {
 public:
  static constexpr std::size_t kNonce = 16;
  static constexpr std::size_t kMac = 16;

  std::string name() const override { return "testvec"; }

  KeyPair gen(Rng& rng) const override {
    Bytes sk = rng.bytes(32);
    return {pub_of(sk), std::move(sk)};
  }

  Bytes enc(ByteView pk, ByteView m, Rng& rng) const override {
    Bytes nonce = rng.bytes(kNonce);
    Bytes out = nonce;
    Bytes body = xor_stream(pk, nonce, m);
    out.insert(out.end(), body.begin(), body.end());
    Bytes tag = mac(pk, nonce, body);
    out.insert(out.end(), tag.begin(), tag.end());
    return out;
  }

  std::optional<Bytes> dec(ByteView sk, ByteView c) const override {
    if (c.size() < kNonce + kMac) return std::nullopt;
    Bytes pk = pub_of(sk);
    ByteView nonce = c.first(kNonce);
    ByteView body = c.subspan(kNonce, c.size() - kNonce - kMac);
    Bytes tag = mac(pk, nonce, body);
    if (!std::equal(tag.begin(), tag.end(), c.last(kMac).begin())) return std::nullopt;
    return xor_stream(pk, nonce, body);
  }

  Bytes sign(ByteView sk, ByteView m, Rng&) const override {
    return sha256(concat({sv("sig"), pub_of(sk), m}));
  }

  bool verify(ByteView pk, ByteView m, ByteView sig) const override {
    Bytes want = sha256(concat({sv("sig"), pk, m}));
    return sig.size() == want.size() && std::equal(want.begin(), want.end(), sig.begin());
  }

  std::size_t ciphertext_length(std::size_t n) const override { return n + kNonce + kMac; }

 private:
  static Bytes pub_of(ByteView sk) { return sha256(concat({sv("pub"), sk})); }

  static Bytes xor_stream(ByteView pk, ByteView nonce, ByteView in) {
    Bytes out(in.begin(), in.end());
    for (std::size_t off = 0, ctr = 0; off < out.size(); off += 32, ++ctr) {
      Bytes c;
      append_u64be(c, ctr);
      Bytes ks = sha256(concat({pk, nonce, c}));
      for (std::size_t i = 0; i < 32 && off + i < out.size(); ++i) out[off + i] ^= ks[i];
    }
    return out;
  }

  static Bytes mac(ByteView pk, ByteView nonce, ByteView body) {
    Bytes t = sha256(concat({sv("tag"), pk, nonce, body}));
    t.resize(kMac);
    return t;
  }
};

// --- identity --------------------------------------------------------------

class IdentityProvider final : public CryptoProvider {
 public:
  static constexpr std::string_view kEncTag = "ID:";
  static constexpr std::string_view kSigTag = "IDSIG";

  std::string name() const override { return "identity"; }

  KeyPair gen(Rng& rng) const override {
    Bytes sk = rng.bytes(16);
    return {concat({sv("idpub:"), sk}), sk};
  }

  Bytes enc(ByteView, ByteView m, Rng&) const override { return concat({sv(kEncTag), m}); }

  std::optional<Bytes> dec(ByteView, ByteView c) const override {
    if (c.size() < kEncTag.size() || !std::equal(kEncTag.begin(), kEncTag.end(), c.begin())) {
      return std::nullopt;
    }
    return Bytes(c.begin() + kEncTag.size(), c.end());
  }

  Bytes sign(ByteView, ByteView, Rng&) const override { return to_bytes(kSigTag); }

  bool verify(ByteView, ByteView, ByteView sig) const override {
    return sig.size() == kSigTag.size() && std::equal(kSigTag.begin(), kSigTag.end(), sig.begin());
  }

  std::size_t ciphertext_length(std::size_t n) const override { return n + kEncTag.size(); }

 private:
  static Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }
};

}  // namespace

const CryptoProvider& real_provider() {
  static const RealProvider p;
  return p;
}

const CryptoProvider& testvec_provider() {
  static const TestvecProvider p;
  return p;
}

const CryptoProvider& identity_provider() {
  static const IdentityProvider p;
  return p;
}

const CryptoProvider& provider_by_name(std::string_view name) {
  if (name == "real") return real_provider();
  if (name == "testvec") return testvec_provider();
  if (name == "identity") return identity_provider();
  throw Error("unknown crypto provider '" + std::string(name) + "'");
}

std::size_t ciphertext_length_profile(const CryptoProvider& p, std::size_t plaintext_length) {
  return p.ciphertext_length(plaintext_length);
}

}  // namespace clio
