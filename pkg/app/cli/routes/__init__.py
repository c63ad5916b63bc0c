from app.cli.routes import analysis_routes, configuration_routes, experiment_routes

ROUTE_GROUPS = (configuration_routes, analysis_routes, experiment_routes)
