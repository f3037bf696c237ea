"""
Plotly template shared by every report figure
"""

import plotly.graph_objects as go

# 系列ごとの色
COLORS = {
    "observed": "#222222",
    "forecast": "#6a3d9a",
    "persistence": "#1f78b4",
    "band90": "rgba(106,61,154,0.18)",
    "band50": "rgba(106,61,154,0.38)",
    "ideal": "#999999",
}

FIGURE_WIDTH = 900
FIGURE_HEIGHT = 450


def get_report_template() -> go.layout.Template:
    """Light template with a white background so SVGs print cleanly"""
    return go.layout.Template(
        layout=go.Layout(
            font=dict(family="DejaVu Sans, Arial, sans-serif", size=13, color="#222222"),
            paper_bgcolor="white",
            plot_bgcolor="white",
            colorway=[COLORS["forecast"], COLORS["persistence"], "#33a02c", "#e31a1c", "#ff7f00"],
            xaxis=dict(showgrid=True, gridcolor="#e5e5e5", zeroline=False, linecolor="#888888"),
            yaxis=dict(showgrid=True, gridcolor="#e5e5e5", zeroline=False, linecolor="#888888"),
            legend=dict(bgcolor="rgba(255,255,255,0.8)"),
            width=FIGURE_WIDTH,
            height=FIGURE_HEIGHT,
            margin=dict(l=70, r=30, t=60, b=60),
        )
    )
