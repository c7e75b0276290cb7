from jetmaps.config import set_config
from jetmaps.dsl import parse_problem
from jetmaps.ideal import infer_ranking, orient, verify_solution_map
from jetmaps.series import verify_param_symmetry

WAVE = """
[variables]
independent: t x
dependent: u
[system source]
u[t,t] = x*u[x,x]
[mapping]
t' = t
y' = 2*x^(1/2)
v' = x*u[x] - u
[system target]
v'[t',t'] = v'[y',y'] - 3/y'*v'[y']
"""

BURGERS = """
[variables]
independent: x y
dependent: u
parameters: a
[system source]
u[y] = u[x,x] + u*u[x]
[param-mapping]
ubar = u + 2*a*u[x]*(a*u + 1)^(-1)
[options]
flow_ode = yes
"""

# Fewer numeric spot checks per residual
set_config({"spot_checks": 1})

# Wave equation u_tt = x u_xx mapped onto a radial equation
problem = parse_problem(WAVE)
ctx = problem.context
system = orient(problem.source_system, ctx, infer_ranking(ctx, [eq.lhs for eq in problem.source_system]))
report = verify_solution_map(system, problem.target_system, problem.mapping)
print(report.to_json())

# One-parameter symmetry of Burgers' equation, checked up to a^6
problem = parse_problem(BURGERS)
ctx = problem.context
system = orient(problem.source_system, ctx)
report = verify_param_symmetry(system, problem.param_mapping, trunc=6, flow_ode=True)
print(report.verdict.value, report.notes)
