"""RFC 6979 appendix A test vectors, reproduced bit for bit.

Each vector is checked three ways: the derived nonce must match the RFC
value, signing with it must reproduce the RFC's (r, s), and the resulting
signature must verify under the `cryptography` package (an independent
second implementation).
"""

import hashlib

import pytest
from cryptography.exceptions import InvalidSignature
from cryptography.hazmat.primitives.asymmetric import ec as cec
from cryptography.hazmat.primitives.asymmetric.utils import (
    Prehashed, encode_dss_signature)

from keysweep import ec
from keysweep.nonces import rfc6979_k, ecdsa_sign_with_k
from keysweep.nonces.rfc6979 import InvalidPrivateKeyError

# Appendix A.2.5: ECDSA over NIST P-256.
P256_X = 0xC9AFA9D845BA75166B5C215767B1D6934E50C3DB36E89B127B8A622B120F6721

# (hash, message, expected k, expected r, expected s)
P256_VECTORS = [
    ("sha1", b"sample",
     0x882905F1227FD620FBF2ABF21244F0BA83D0DC3A9103DBBEE43A1FB858109DB4,
     0x61340C88C3AAEBEB4F6D667F672CA9759A6CCAA9FA8811313039EE4A35471D32,
     0x6D7F147DAC089441BB2E2FE8F7A3FA264B9C475098FDCF6E00D7C996E1B8B7EB),
    ("sha256", b"sample",
     0xA6E3C57DD01ABE90086538398355DD4C3B17AA873382B0F24D6129493D8AAD60,
     0xEFD48B2AACB6A8FD1140DD9CD45E81D69D2C877B56AAF991C34D0EA84EAF3716,
     0xF7CB1C942D657C41D436C7A1B6E29F65F3E900DBB9AFF4064DC4AB2F843ACDA8),
    ("sha512", b"sample",
     0x5FA81C63109BADB88C1F367B47DA606DA28CAD69AA22C4FE6AD7DF73A7173AA5,
     0x8496A60B5E9B47C825488827E0495B0E3FA109EC4568FD3F8D1097678EB97F00,
     0x2362AB1ADBE2B8ADF9CB9EDAB740EA6049C028114F2460F96554F61FAE3302FE),
    ("sha256", b"test",
     0xD16B6AE827F17175E040871A1C7EC3500192C4C92677336EC2537ACAEE0008E0,
     0xF1ABB023518351CD71D881567B1EA663ED3EFCF6C5132B354F28D3B0B7D38367,
     0x019F4113742A2B14BD25926B49C649155F267E60D3814B4C0CC84250E46F0083),
]

# Appendix A.2.7: ECDSA over NIST P-521.
P521_X = 0x0FAD06DAA62BA3B25D2FB40133DA757205DE67F5BB0018FEE8C86E1B68C7E75CAA896EB32F1F47C70855836A6D16FCC1466F6D8FBEC67DB89EC0C08B0E996B83538

P521_VECTORS = [
    ("sha1", b"sample",
     0x089C071B419E1C2820962321787258469511958E80582E95D8378E0C2CCDB3CB42BEDE42F50E3FA3C71F5A76724281D31D9C89F0F91FC1BE4918DB1C03A5838D0F9,
     0x0343B6EC45728975EA5CBA6659BBB6062A5FF89EEA58BE3C80B619F322C87910FE092F7D45BB0F8EEE01ED3F20BABEC079D202AE677B243AB40B5431D497C55D75D,
     0x0E7B0E675A9B24413D448B8CC119D2BF7B2D2DF032741C096634D6D65D0DBE3D5694625FB9E8104D3B842C1B0E2D0B98BEA19341E8676AEF66AE4EBA3D5475D5D16),
    ("sha512", b"sample",
     0x1DAE2EA071F8110DC26882D4D5EAE0621A3256FC8847FB9022E2B7D28E6F10198B1574FDD03A9053C08A1854A168AA5A57470EC97DD5CE090124EF52A2F7ECBFFD3,
     0x0C328FAFCBD79DD77850370C46325D987CB525569FB63C5D3BC53950E6D4C5F174E25A1EE9017B5D450606ADD152B534931D7D4E8455CC91F9B15BF05EC36E377FA,
     0x0617CCE7CF5064806C467F678D3B4080D6F1CC50AF26CA209417308281B68AF282623EAA63E5B5C0723D8B8C37FF0777B1A20F8CCB1DCCC43997F1EE0E44DA4A67A),
    ("sha512", b"test",
     0x16200813020EC986863BEDFC1B121F605C1215645018AEA1A7B215A564DE9EB1B38A67AA1128B80CE391C4FB71187654AAA3431027BFC7F395766CA988C964DC56D,
     0x13E99020ABF5CEE7525D16B69B229652AB6BDF2AFFCAEF38773B4B7D08725F10CDB93482FDCC54EDCEE91ECA4166B2A7C6265EF0CE2BD7051B7CEF945BABD47EE6D,
     0x1FBD0013C674AA79CB39849527916CE301C66EA7CE8B80682786AD60F98F7E78A19CA69EFF5C57400E3B3A0AD66CE0978214D13BAF4E9AC60752F7B155E2DE4DCE3),
]

_CEC_CURVES = {"nistp256": cec.SECP256R1(), "nistp521": cec.SECP521R1()}
_CEC_HASHES = {"sha1": hashlib.sha1, "sha256": hashlib.sha256, "sha512": hashlib.sha512}


def _check_vector(curve, x, hash_name, msg, k, r, s):
    digest = hashlib.new(hash_name, msg).digest()
    q = curve.n
    assert rfc6979_k(x, digest, q, hash_name) == k
    h = ec.digest_bits_to_int(digest, q)
    assert ecdsa_sign_with_k(x, h, k, curve) == (r, s)

    # independent verification of the produced signature
    from cryptography.hazmat.primitives import hashes as chashes
    hash_cls = {"sha1": chashes.SHA1, "sha256": chashes.SHA256,
                "sha512": chashes.SHA512}[hash_name]
    pub = cec.derive_private_key(x, _CEC_CURVES[curve.name]).public_key()
    pub.verify(encode_dss_signature(r, s), digest, cec.ECDSA(Prehashed(hash_cls())))


@pytest.mark.parametrize("hash_name,msg,k,r,s", P256_VECTORS)
def test_p256_vectors(hash_name, msg, k, r, s):
    _check_vector(ec.P256, P256_X, hash_name, msg, k, r, s)


@pytest.mark.parametrize("hash_name,msg,k,r,s", P521_VECTORS)
def test_p521_vectors(hash_name, msg, k, r, s):
    _check_vector(ec.P521, P521_X, hash_name, msg, k, r, s)


def test_determinism_and_range():
    digest = hashlib.sha256(b"whatever").digest()
    k1 = rfc6979_k(12345, digest, ec.P256.n)
    k2 = rfc6979_k(12345, digest, ec.P256.n)
    assert k1 == k2
    assert 1 <= k1 < ec.P256.n


def test_rejects_bad_private_key():
    digest = hashlib.sha256(b"x").digest()
    with pytest.raises(InvalidPrivateKeyError):
        rfc6979_k(0, digest, ec.P256.n)
    with pytest.raises(InvalidPrivateKeyError):
        rfc6979_k(ec.P256.n, digest, ec.P256.n)
