import clr
clr.AddReference('RevitAPI')
from Autodesk.Revit.DB import (
    BuiltInCategory, FamilySymbol, FilteredElementCollector, Level, Line,
    Transaction, Wall, WallType, XYZ,
)
from Autodesk.Revit.DB.Structure import StructuralType

doc = __revit__.ActiveUIDocument.Document
level = FilteredElementCollector(doc).OfClass(Level).FirstElement()

wall_type = FilteredElementCollector(doc).OfClass(WallType).FirstElement()

t = Transaction(doc, 'Create walls')
t.Start()
walls = []
line = Line.CreateBound(XYZ(0.0, 0.0, 0.0), XYZ(30.0, 0.0, 0.0))
walls.append(Wall.Create(doc, line, wall_type.Id, level.Id, 10.0, 0.0, False, False))
line = Line.CreateBound(XYZ(30.0, 0.0, 0.0), XYZ(30.0, 40.0, 0.0))
walls.append(Wall.Create(doc, line, wall_type.Id, level.Id, 10.0, 0.0, False, False))
line = Line.CreateBound(XYZ(30.0, 40.0, 0.0), XYZ(0.0, 40.0, 0.0))
walls.append(Wall.Create(doc, line, wall_type.Id, level.Id, 10.0, 0.0, False, False))
line = Line.CreateBound(XYZ(0.0, 40.0, 0.0), XYZ(0.0, 0.0, 0.0))
walls.append(Wall.Create(doc, line, wall_type.Id, level.Id, 10.0, 0.0, False, False))
line = Line.CreateBound(XYZ(0.0, 20.0, 0.0), XYZ(30.0, 20.0, 0.0))
walls.append(Wall.Create(doc, line, wall_type.Id, level.Id, 10.0, 0.0, False, False))
line = Line.CreateBound(XYZ(15.0, 20.0, 0.0), XYZ(15.0, 40.0, 0.0))
walls.append(Wall.Create(doc, line, wall_type.Id, level.Id, 10.0, 0.0, False, False))
line = Line.CreateBound(XYZ(15.0, 30.0, 0.0), XYZ(30.0, 30.0, 0.0))
walls.append(Wall.Create(doc, line, wall_type.Id, level.Id, 10.0, 0.0, False, False))
line = Line.CreateBound(XYZ(5.0, 20.0, 0.0), XYZ(5.0, 40.0, 0.0))
walls.append(Wall.Create(doc, line, wall_type.Id, level.Id, 10.0, 0.0, False, False))
t.Commit()
