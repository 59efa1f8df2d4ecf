"""Machine-side halves of the reductions, as oracle register programs.

Each program sees only its oracle (the data handed over by the
reduction) and its input registers.
"""

from __future__ import annotations

from ..omachine import OracleProgram

ECHO = OracleProgram.parse("""
    query r1 r0
    halt r1
""", name="echo")

# least n >= r0 with oracle(n) = 0
ZERO_SEARCH = OracleProgram.parse("""
loop:
    query r1 r0
    jz r1 done
    inc r0
    jmp loop
done:
    halt r0
""", name="zero_search")

# input r0 = depth; oracle(code) = 1 iff code is in J.
# c is the binary-word code of the prefix built so far; 2c+1 appends a 1.
LIMIT_FROM_J = OracleProgram.parse("""
    set r1 1
    set r2 0
loop:
    jlt r2 r0 body
    halt r1
body:
    add r3 r1 r1
    inc r3
    query r4 r3
    jz r4 zero
    copy r1 r3
    jmp step
zero:
    add r1 r1 r1
step:
    inc r2
    jmp loop
""", name="limit_from_j")

# oracle layout: 0 -> K; 1+i -> code of the radius of ball i;
# 1+K+m*K+i -> integer a with |a/2^(m+2) - (x_i + 1)| < 2^-(m+1).
# Diagonal dovetail: stage D visits the pairs i < j <= D at depth
# m = D - j + 1.  A pair with equal radius codes is accepted when
# |a_i - a_j| > 8, which certifies |x_i - x_j| > 2^-m.  Halts with (i, j, m).
NIN_DOVETAIL = OracleProgram.parse("""
    set r9 0
    query r0 r9
    set r1 0
    set r12 1
stage:
    inc r1
    set r3 1
jloop:
    jlt r3 r0 jok
    jmp stage
jok:
    jlt r1 r3 stage
    sub r7 r1 r3
    inc r7
    set r2 0
iloop:
    jlt r2 r3 ibody
    inc r3
    jmp jloop
ibody:
    add r4 r2 r12
    query r5 r4
    add r4 r3 r12
    query r6 r4
    jeq r5 r6 same
next:
    inc r2
    jmp iloop
same:
    mul r8 r7 r0
    add r8 r8 r0
    add r8 r8 r12
    add r4 r8 r2
    query r5 r4
    add r4 r8 r3
    query r6 r4
    sub r10 r5 r6
    sub r11 r6 r5
    add r10 r10 r11
    set r11 8
    jlt r11 r10 found
    jmp next
found:
    halt r2 r3 r7
""", name="nin_dovetail")

# oracle layout: 0 -> K; 1+i -> a with |a/128 - (t(x_i) + 1)| < 1/64.
# Halts with the first i whose radius is about 1/8 (a >= 136), else K.
CANTOR_SCAN = OracleProgram.parse("""
    set r9 0
    query r0 r9
    set r1 0
    set r8 136
loop:
    jlt r1 r0 body
    halt r0
body:
    set r9 1
    add r2 r1 r9
    query r3 r2
    jlt r3 r8 skip
    halt r1
skip:
    inc r1
    jmp loop
""", name="cantor_scan")

# oracle m -> a with |a/2^(m+2) - (y + 1)| < 2^-(m+1).
# Looks for N with y = 3/4 + 2^-(N+3), reading y at m = N+5.
# Halts (1, N) on a match and (0, N) once y <= 3/4 or y >= 7/8 is certain.
LEBESGUE_RECOVERY = OracleProgram.parse("""
    set r0 0
    set r1 32
loop:
    set r9 5
    add r2 r0 r9
    query r3 r2
    set r9 7
    mul r5 r1 r9
    set r9 2
    add r6 r3 r9
    jlt r5 r6 notlow
    set r7 0
    halt r7 r0
notlow:
    add r8 r3 r3
    set r9 4
    sub r8 r8 r9
    set r9 15
    mul r10 r1 r9
    jlt r8 r10 nothigh
    set r7 0
    halt r7 r0
nothigh:
    set r9 16
    add r4 r5 r9
    set r9 2
    add r11 r4 r9
    jlt r3 r11 c1
    jmp next
c1:
    jlt r4 r6 found
next:
    inc r0
    add r1 r1 r1
    jmp loop
found:
    set r7 1
    halt r7 r0
""", name="lebesgue_recovery")

CATALOG = {p.name: p for p in (ECHO, ZERO_SEARCH, LIMIT_FROM_J, NIN_DOVETAIL,
                                CANTOR_SCAN, LEBESGUE_RECOVERY)}
