"""Binary pictures of configurations.

Filling every column of a profile with 1s up to its height and 0s above
turns a configuration into a two-dimensional binary picture.  The only
local constraint in such pictures is that no 1 sits directly above a 0.
The rule can be run on the pictures themselves: each update trims one
column off each side and two rows top and bottom, and cells whose value
the window cannot determine come back marked indeterminate.
"""

from sandlab import (
    apply,
    apply_2d,
    decode,
    embed,
    gamma_table,
    periodic_config,
    render_ascii,
)

gamma = gamma_table()
x = periodic_config((0, 1, 3, 1, 0))

print("== the rising profile, drawn ==")
w = embed(x, (-5, 5), (-2, 6))
print(render_ascii(w))
print()

print("== three steps of the orbit ==")
cur = x
for n in range(3):
    cur = apply(gamma, cur)
    print(f"after step {n + 1}:")
    print(render_ascii(embed(cur, (-5, 5), (-2, 6))))
    print()

print("== updating the picture directly ==")
out = apply_2d(gamma, w)
print(render_ascii(out))
print("('?' marks cells the finite window cannot pin down)")
print()

print("== reading column heights back ==")
for reading in decode(embed(x, (0, 4), (-2, 6))):
    print(" ", reading)
