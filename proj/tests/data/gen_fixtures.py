#!/usr/bin/env python3
"""Regenerates the reference tables in this directory with PARI/GP (cypari).

Run from anywhere: python3 tests/data/gen_fixtures.py
"""
import os
import re
import sys
import textwrap

import cypari

pari = cypari.pari
pari.allocatemem(2 * 10**9)
OUT = os.path.dirname(os.path.abspath(__file__))
HEADER = "label,degree,galois_label,disc,subfield_discs"

GP_DEFS = r"""
pcomp(a,b) = vecextract(a,b);
pord(p) = my(q=p,k=1,e=vector(#p,i,i)); while(Vec(q)!=e, q=pcomp(q,p); k++); k;
ppow(p,n) = my(q=vector(#p,i,i)); q=Vecsmall(q); for(j=1,n,q=pcomp(q,p)); q;
pinv(p) = my(q=p); for(i=1,#p,q[p[i]]=i); q;
subgrp(gens) = {
  my(n=#gens[1], S=Map(), todo=List([Vecsmall(vector(n,i,i))]), out=List(), e);
  mapput(S, todo[1], 1);
  while(#todo,
    e = todo[#todo]; listpop(todo); listput(out, e);
    for(k=1,#gens, my(f=pcomp(e,gens[k])); if(!mapisdefined(S,f), mapput(S,f,1); listput(todo,f))));
  Vec(out);
}
fixdisc(G, gens) = nfdisc(polredbest(galoisfixedfield(G, gens, 1)));
central_inv(G) = {
  my(E=G.group);
  for(k=1,#E, my(z=E[k]); if(pord(z)==2 && #select(y->pcomp(y,z)!=pcomp(z,y), E)==0, return(z)));
  error("no central involution");
}
\\ g,h with g^m = h^2 = (gh)^3 = 1 generating a subgroup of order ord not containing avoid
find_gh(G, m, ord, avoid) = {
  my(E=G.group, idp=Vecsmall(vector(#E[1],i,i)));
  for(a=1,#E, if(pord(E[a])!=m, next);
    for(b=1,#E, if(pord(E[b])!=2 || (avoid && E[b]==avoid), next);
      if(pord(pcomp(E[a],E[b]))!=3, next);
      my(H=subgrp([E[a],E[b]]));
      if(#H!=ord, next);
      if(avoid && #select(y->y==avoid, H), next);
      return([E[a],E[b]])));
  error("no generators");
}
"""


def gp_define(code):
    # one pari() call per definition; a definition starts with "name(args) =" in column 0
    chunks = []
    for line in textwrap.dedent(code).strip().splitlines():
        if not line.strip() or line.strip().startswith("\\\\"):
            continue
        if re.match(r"^\w+\(.*\)\s*=", line):
            chunks.append([])
        chunks[-1].append(line.strip())
    for c in chunks:
        pari(" ".join(c))


gp_define(GP_DEFS)


def gp(name):
    return pari(name)


def write(name, rows, header=HEADER):
    path = os.path.join(OUT, name)
    with open(path, "w", newline="\n") as fh:
        fh.write(header + "\n")
        for r in rows:
            fh.write(",".join(str(x) for x in r) + "\n")
    print(f"{name}: {len(rows)} rows", file=sys.stderr)


def labelled(deg, polys, glabel, subfields=lambda p: ""):
    """lmfdb-nf-v1 rows with n.r.|D|.i labels, i counting fields of equal (r, |D|)."""
    recs = []
    for p in polys:
        d = int(pari.nfdisc(p))
        r = int(pari.polsturm(p))
        recs.append((abs(d), d, r, str(pari.polredabs(p)), subfields(p)))
    recs.sort()
    rows, seen = [], {}
    for ad, d, r, _, sub in recs:
        key = (r, ad)
        seen[key] = seen.get(key, 0) + 1
        rows.append((f"{deg}.{r}.{ad}.{seen[key]}", deg, glabel, d, sub))
    return rows


def subfield_disc(p, k):
    subs = pari.nfsubfields(p, k)
    return ";".join(str(int(pari.nfdisc(s[0]))) for s in subs)


def fields_tables():
    if "quick" not in sys.argv:
        write("s3_cubic_neg_1e6.csv", labelled(3, pari('nflist("S3",[1,10^6],1)'), "S3"))
        write("c3_cubic_1e6.csv", labelled(3, pari('nflist("C3",[1,10^6])'), "C3"))
        write("c4_quartic_1e6.csv", labelled(4, pari('nflist("C4",[1,10^6])'), "C4", lambda p: subfield_disc(p, 2)))
    quartics = list(pari('nflist("A4",[1,10^5])')) + list(pari('nflist("S4",[1,2000])'))
    rows = labelled(4, quartics, "quartic")
    glabel = {}
    for q in quartics:
        glabel[int(pari.nfdisc(q))] = "A4" if int(pari.polgalois(q)[0]) == 12 else "S4"
    write("a4_s4_quartics.csv", [(l, n, glabel[d], d, s) for l, n, _, d, s in rows])

    # 6T3 sextics as composita of an S3 cubic with a quadratic other than its resolvent;
    # complete only as far as the cubic and quadratic ranges reach
    bound = 10**7
    cubics = [c for sg in (0, 1) for c in pari(f'nflist("S3",[1,2000],{sg})')]
    quads = [d for d in range(-200, 201) if d not in (0, 1) and int(pari.isfundamental(d))]
    recs = []
    for c in cubics:
        d3 = int(pari.nfdisc(c))
        res = int(pari.coredisc(d3))
        for d in quads:
            if d == res or d3 * d3 * abs(d) ** 3 > bound * 10**4:
                continue
            p = pari.polredbest(pari.polcompositum(c, pari(f"x^2-({d})"))[0])
            d1 = int(pari.nfdisc(p))
            if abs(d1) <= bound:
                recs.append((abs(d1), d1, int(pari.polsturm(p)), f"{d3};{d}"))
    recs.sort()
    rows, seen = [], {}
    for ad, d1, r, sub in recs:
        seen[(r, ad)] = seen.get((r, ad), 0) + 1
        rows.append((f"6.{r}.{ad}.{seen[(r, ad)]}", 6, "6T3", d1, sub))
    write("sextic_6t3.csv", rows)


def closure(p):
    return pari.polredbest(pari.nfsplitting(p))


def bundles():
    # V4: DL, DK1, DK2, DK3 from explicit composita
    rows = []
    ds = [d for d in range(-60, 61) if d not in (0, 1) and int(pari.isfundamental(d))]
    for i, a in enumerate(ds):
        for b in ds[i + 1:: 5]:
            p = pari.polredbest(pari.polcompositum(pari(f"x^2-({a})"), pari(f"x^2-({b})"))[0])
            subs = [int(pari.nfdisc(s[0])) for s in pari.nfsubfields(p, 2)]
            rows.append((int(pari.nfdisc(p)), *subs))
    write("bundles_22a.csv", rows, "DL,DK1,DK2,DK3")

    rows = []
    for sign in (0, 1):
        for p in list(pari(f'nflist("S3",[1,2000],{sign})'))[:15]:
            L = closure(p)
            rows.append((int(pari.nfdisc(L)), int(pari.nfdisc(p)), int(pari.nfdisc(pari.nfsubfields(L, 2)[0][0]))))
    write("bundles_22b.csv", rows, "DL,DL3,DL2")

    # A4: L6 = fixed field of an involution, L4 of a 3-cycle, L3 of the Klein group
    rows = []
    for p in list(pari('nflist("A4",[1,10^5])'))[:12]:
        G = pari.galoisinit(closure(p))
        g, h = gp("find_gh")(G, 3, 12, 0)
        rows.append((int(pari.nfdisc(G[0])), int(gp("fixdisc")(G, [h])), int(gp("fixdisc")(G, [g])),
                     int(gp("fixdisc")(G, [h, pari(f"(g,h)->pcomp(pcomp(g,h),pinv(g))")(g, h)]))))
    write("bundles_22c.csv", rows, "DL,DL6,DL4,DL3")

    rows = []
    w = pari("(s)->eval(s)")
    for p in list(pari('nflist("S4",[1,3000])'))[:12]:
        G = pari.galoisinit(closure(p))
        g, h = gp("find_gh")(G, 4, 24, 0)
        sub = pari("(G,g,h)->[fixdisc(G,[h,pcomp(pcomp(ppow(g,2),h),ppow(g,2))]), fixdisc(G,[pcomp(h,g),pcomp(pcomp(g,h),pinv(g))]), fixdisc(G,[h,ppow(g,2)])]")(G, g, h)
        rows.append(tuple(int(v) for v in sub))
    write("bundles_22d.csv", rows, "DL6,DL4,DL3")


def lemma_bundles():
    gp_define(r"""
    wA4C2(G,g,h,i) = my(gi=pinv(g), c(a,b)=pcomp(a,b), ghg=c(c(g,h),gi));
      [ fixdisc(G,[c(h,i), ghg]), fixdisc(G,[h, ghg, i]), fixdisc(G,[c(h,g)]), fixdisc(G,[c(h,g), i]),
        fixdisc(G,[g,h]), fixdisc(G,[c(h,i)]), fixdisc(G,[h,i]) ];
    wS4(G,g,h) = my(gi=pinv(g), c(a,b)=pcomp(a,b), g2=ppow(g,2), ghg=c(c(g,h),gi), gihg=c(c(gi,h),g));
      [ fixdisc(G,[h, c(c(g2,h),g2)]), fixdisc(G,[h,g2]), fixdisc(G,[c(h,g), ghg]), fixdisc(G,[ghg]),
        fixdisc(G,[g2, c(g,h)]), fixdisc(G,[c(h,g)]), fixdisc(G,[g]) ];
    wS4C2(G,g,h,i) = my(gi=pinv(g), c(a,b)=pcomp(a,b), g2=ppow(g,2), ghg=c(c(g,h),gi), gihg=c(c(gi,h),g));
      [ fixdisc(G,[g, c(c(c(h,g2),h),i)]), fixdisc(G,[g, c(c(h,g2),h), i]), fixdisc(G,[c(h,g), c(ghg,i)]),
        fixdisc(G,[c(h,g), ghg, i]), fixdisc(G,[c(g,i), c(h,i)]), fixdisc(G,[ghg, c(gihg,i)]),
        fixdisc(G,[g,h]), fixdisc(G,[c(g,h), gihg]), fixdisc(G,[ghg, gihg, i]) ];
    """)
    quads = [5, -3, -4, 8, -7, 13, -8, 12]

    rows = []
    for k, p in enumerate(list(pari('nflist("A4",[1,10^5])'))[:6]):
        L = pari.polredbest(pari.polcompositum(pari.nfsplitting(p), pari(f"x^2-({quads[k]})"))[0])
        G = pari.galoisinit(L)
        i = gp("central_inv")(G)
        g, h = gp("find_gh")(G, 3, 12, i)
        rows.append(tuple(int(v) for v in gp("wA4C2")(G, g, h, i)))
    write("bundles_3.2.csv", rows, "D6,D3,D8,D4,D2,D12,D6p")

    rows33, rows34 = [], []
    for p in list(pari('nflist("S4",[1,3000])'))[:8]:
        G = pari.galoisinit(closure(p))
        g, h = gp("find_gh")(G, 4, 24, 0)
        D6, D3, D4, D12, D2, D8, D6pp = (int(v) for v in gp("wS4")(G, g, h))
        rows33.append((D6, D3, D4, D12, D2, D8))
        rows34.append((D6pp, D3, D8, D4, D2, D12, D6))
    write("bundles_3.3.csv", rows33, "D6,D3,D4,D12,D2,D8")
    write("bundles_3.4.csv", rows34, "D6pp,D3,D8,D4,D2,D12,D6")

    rows = []
    for k, p in enumerate(list(pari('nflist("S4",[1,3000])'))[:4]):
        L24 = closure(p)
        d = quads[k] if quads[k] != int(pari.nfdisc(pari.nfsubfields(L24, 2)[0][0])) else 17
        L = pari.polredbest(pari.polcompositum(L24, pari(f"x^2-({d})"))[0])
        G = pari.galoisinit(L)
        i = gp("central_inv")(G)
        g, h = gp("find_gh")(G, 4, 24, i)
        rows.append(tuple(int(v) for v in gp("wS4C2")(G, g, h, i)))
    write("bundles_3.5.csv", rows, "D6,D3,D8,D4,D2,D12,D2p,D8p,D6p")


if __name__ == "__main__":
    what = sys.argv[1:] or ["fields", "bundles", "lemmas"]
    if "fields" in what:
        fields_tables()
    if "bundles" in what:
        bundles()
    if "lemmas" in what:
        lemma_bundles()
