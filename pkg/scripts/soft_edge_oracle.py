"""Independent soft-edge values from the Airy Hankel operator B(x, y) = Ai(x + y + s) on (0, inf).

det(I - B) is F_1 and det(I - B) det(I + B) is F_2.  Computed in mpmath at 30 digits;
the printed columns are F_1 at 40 and 60 nodes, then F_2 at 40 and 60 nodes.
"""
import mpmath as mp
mp.mp.dps = 30
def gl(m, L):
    xs, ws = [], []
    for k in range(1, m+1):
        x = mp.cos(mp.pi*(k-mp.mpf(1)/4)/(m+mp.mpf(1)/2))
        for _ in range(100):
            p0, p1 = mp.mpf(1), x
            for j in range(2, m+1):
                p0, p1 = p1, ((2*j-1)*x*p1-(j-1)*p0)/j
            dp = m*(x*p1-p0)/(x*x-1)
            dx = p1/dp; x -= dx
            if abs(dx) < mp.mpf(10)**-28: break
        xs.append(L*(x+1)/2); ws.append(L/((1-x*x)*dp*dp))
    return xs, ws
def tw(s, m, L=20):
    xs, ws = gl(m, L)
    B = mp.matrix(m, m)
    for i in range(m):
        for j in range(m):
            B[i, j] = mp.sqrt(ws[i]*ws[j])*mp.airyai(xs[i]+xs[j]+s)
    I = mp.eye(m)
    dm, dp = mp.det(I-B), mp.det(I+B)
    return dm, dm*dp
for s in (-3, -2, 0, 1):
    a = tw(s, 40); b = tw(s, 60)
    print(s, mp.nstr(a[0], 20), mp.nstr(b[0], 20), mp.nstr(a[1], 20), mp.nstr(b[1], 20))
