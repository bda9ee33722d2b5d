"""How many satellites a single-visibility constellation needs.

One satellite covers a spherical cap whose size follows from orbit radius
and the user's elevation mask; dividing the sphere by the cap (with no
overlap credit) bounds the constellation size from below.  The table shows
the strong dependence on both knobs: low orbits behind steep masks need
tens of thousands of satellites, high orbits behind shallow masks a handful.
"""

import math

from inaclink import OrbitGeometry, coverage_area, geocentric_angle, min_satellites

R_E = 6378e3


def main() -> None:
    heights_km = (500, 1000, 2000, 4000, 8000, 12000, 20000, 30000)
    masks_deg = (5, 15, 30, 45, 60, 75)

    print("minimum satellites for whole-sphere single coverage")
    header = "  ".join(f"{m:>6}d" for m in masks_deg)
    print(f"  {'alt km':>7}  {header}")
    for h in heights_km:
        row = []
        for m in masks_deg:
            geom = OrbitGeometry(r_e=R_E, r_m=h * 1e3, elevation=math.radians(m))
            row.append(f"{min_satellites(geom):>7}")
        print(f"  {h:>7}  {'  '.join(row)}")
    print()

    geom = OrbitGeometry(r_e=R_E, r_m=500e3, elevation=math.radians(75.0))
    psi = geocentric_angle(geom)
    cap = coverage_area(geom)
    sphere = 4.0 * math.pi * R_E**2
    print("the headline cell, spelled out (500 km altitude, 75 degree mask):")
    print(f"  geocentric half-angle {math.degrees(psi):.4f} deg")
    print(f"  cap area {cap / 1e6:.1f} km^2 of {sphere / 1e6:.1f} km^2")
    print(f"  sphere / cap = {sphere / cap:.2f} -> {min_satellites(geom)} satellites")


if __name__ == "__main__":
    main()
