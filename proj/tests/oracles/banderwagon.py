"""Straight-line Python reference for the Banderwagon group used by witbench.

Produces frozen encodings for tests/algebra_test.cpp. Independent of the C++
code: affine Edwards formulas, Python integers, no Montgomery form.
"""
import hashlib

Q = 0x73EDA753299D7D483339D80809A1D80553BDA402FFFE5BFEFFFFFFFF00000001
R = 0x1CFB69D4CA675F520CCE760202687600FF8F87007419047174FD06B52876E7E1
A = Q - 5
D = 0x6389C12633C267CBC66E3BF86BE3B6D8CB66677177E54F92B369F2F5188D58E7
GX = 0x29C132CC2C0B34C5743711777BBE42F32B79C022AD998465E1E71866A252AE18
GY = 0x2A6C669EDA123E0F157D8B50BADCD586358CAD81EEE464605E3167B6CC974166


def add(p, q):
    x1, y1 = p
    x2, y2 = q
    t = D * x1 * x2 * y1 * y2 % Q
    x3 = (x1 * y2 + y1 * x2) * pow(1 + t, -1, Q) % Q
    y3 = (y1 * y2 - A * x1 * x2) * pow(1 - t, -1, Q) % Q
    return x3, y3


def mul(k, p):
    acc = (0, 1)
    while k:
        if k & 1:
            acc = add(acc, p)
        p = add(p, p)
        k >>= 1
    return acc


def largest(v):
    return v > (Q - 1) // 2


def encode(p):
    x, y = p
    if not largest(y):
        x = (-x) % Q
    return x.to_bytes(32, "little") + bytes(16)


def is_square(v):
    return v == 0 or pow(v, (Q - 1) // 2, Q) == 1


def sqrt(v):
    # Tonelli-Shanks, Q - 1 = 2^32 * t
    s, t = 32, (Q - 1) >> 32
    z = pow(5, t, Q)
    x = pow(v, (t + 1) // 2, Q)
    b = pow(v, t, Q)
    m = s
    while b != 1:
        k, b2 = 0, b
        while b2 != 1:
            b2 = b2 * b2 % Q
            k += 1
        w = pow(z, 1 << (m - k - 1), Q)
        z = w * w % Q
        b = b * z % Q
        x = x * w % Q
        m = k
    return x


def from_x(x):
    num = (1 - A * x * x) % Q
    if not is_square(num):
        return None
    den = (1 - D * x * x) % Q
    yy = num * pow(den, -1, Q) % Q
    if not is_square(yy):
        return None
    y = sqrt(yy)
    if not largest(y):
        y = Q - y
    return x, y


def hash_to_group(domain, index):
    attempt = 0
    while True:
        h = hashlib.sha256()
        for part in (domain.encode(),):
            h.update(part)
        h.update(index.to_bytes(8, "little"))
        h.update(attempt.to_bytes(8, "little"))
        x = int.from_bytes(h.digest(), "little") % Q
        p = from_x(x)
        if p is not None and p[0] != 0:
            return p
        attempt += 1


if __name__ == "__main__":
    G = (GX, GY)
    for k in (1, 2, 5, 7, R - 1, 123456789):
        print(f"enc({k}G) =", encode(mul(k, G)).hex())
    print("enc(identity) =", encode((0, 1)).hex())
    print("rG identity:", mul(R, G) in ((0, 1), (0, Q - 1)))
    for i in range(3):
        p = hash_to_group("witbench.test", i)
        print(f"h2g(witbench.test,{i}) =", encode(p).hex(), " r*P identity:", mul(R, p)[0] == 0)
